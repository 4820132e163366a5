#pragma once

#include <filesystem>
#include <variant>

#include "hsc/lsq.hpp"
#include "hsc/mlp.hpp"
#include "hsc/svr.hpp"

namespace hsc {

using AnyModel = std::variant<SvrModel, MlpModel, LsqModel>;

/// Self-describing JSON files; doubles are written with enough digits that a
/// reloaded model reproduces predictions bitwise.
void save_model(const AnyModel& model, const std::filesystem::path& path);
AnyModel load_model(const std::filesystem::path& path);

double predict_any(const AnyModel& model, const Eigen::VectorXd& features);

}  // namespace hsc
