#include "hsc/model_io.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace hsc {

namespace {

using nlohmann::json;

json vec_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd vec_from_json(const json& arr) {
  Eigen::VectorXd v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) v[static_cast<int>(i)] = arr[i].get<double>();
  return v;
}

json mat_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd mat_from_json(const json& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r > 0 ? static_cast<int>(rows[0].size()) : 0;
  Eigen::MatrixXd m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j].get<double>();
  return m;
}

json scaler_to_json(const FeatureScaler& s) {
  return json{{"lo", vec_to_json(s.lo)}, {"hi", vec_to_json(s.hi)}};
}

FeatureScaler scaler_from_json(const json& j) {
  FeatureScaler s;
  s.lo = vec_from_json(j.at("lo"));
  s.hi = vec_from_json(j.at("hi"));
  return s;
}

}  // namespace

void save_model(const AnyModel& model, const std::filesystem::path& path) {
  json j;
  j["schema_version"] = 1;
  if (const auto* svr = std::get_if<SvrModel>(&model)) {
    j["model_type"] = "svr";
    j["support_vectors"] = mat_to_json(svr->support_vectors);
    j["dual_coeffs"] = vec_to_json(svr->dual_coeffs);
    j["bias"] = svr->bias;
    j["epsilon"] = svr->epsilon;
    j["kernel_gamma"] = svr->kernel_gamma;
    j["nu"] = svr->nu;
    j["box_bound"] = svr->box_bound;
    j["train_size"] = svr->train_size;
    j["scaler"] = scaler_to_json(svr->scaler);
  } else if (const auto* mlp = std::get_if<MlpModel>(&model)) {
    j["model_type"] = "mlp";
    j["layer_sizes"] = mlp->layer_sizes;
    json w = json::array(), b = json::array();
    for (const auto& m : mlp->weights) w.push_back(mat_to_json(m));
    for (const auto& v : mlp->biases) b.push_back(vec_to_json(v));
    j["weights"] = w;
    j["biases"] = b;
    j["scaler"] = scaler_to_json(mlp->scaler);
    j["final_mse"] = mlp->final_mse;
    j["epochs"] = mlp->epochs;
    j["seed"] = mlp->seed;
  } else {
    const auto& lsq = std::get<LsqModel>(model);
    j["model_type"] = "lsq";
    j["weight_vector"] = vec_to_json(lsq.weight_vector);
    j["rank"] = lsq.rank;
    j["gram_det_magnitude"] = lsq.gram_det_magnitude;
    j["rank_deficient"] = lsq.rank_deficient;
    j["train_rmse"] = lsq.train_rmse;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_model: cannot open " + path.string());
  out << j.dump(2) << '\n';
}

AnyModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_model: cannot open " + path.string());
  json j;
  in >> j;
  const std::string type = j.at("model_type").get<std::string>();
  if (type == "svr") {
    SvrModel m;
    m.support_vectors = mat_from_json(j.at("support_vectors"));
    m.dual_coeffs = vec_from_json(j.at("dual_coeffs"));
    m.bias = j.at("bias").get<double>();
    m.epsilon = j.at("epsilon").get<double>();
    m.kernel_gamma = j.at("kernel_gamma").get<double>();
    m.nu = j.at("nu").get<double>();
    m.box_bound = j.at("box_bound").get<double>();
    m.train_size = j.at("train_size").get<int>();
    m.scaler = scaler_from_json(j.at("scaler"));
    return m;
  }
  if (type == "mlp") {
    MlpModel m;
    m.layer_sizes = j.at("layer_sizes").get<std::vector<int>>();
    for (const auto& w : j.at("weights")) m.weights.push_back(mat_from_json(w));
    for (const auto& b : j.at("biases")) m.biases.push_back(vec_from_json(b));
    m.scaler = scaler_from_json(j.at("scaler"));
    m.final_mse = j.at("final_mse").get<double>();
    m.epochs = j.at("epochs").get<int>();
    m.seed = j.at("seed").get<uint64_t>();
    return m;
  }
  if (type == "lsq") {
    LsqModel m;
    m.weight_vector = vec_from_json(j.at("weight_vector"));
    m.rank = j.at("rank").get<int>();
    m.gram_det_magnitude = j.at("gram_det_magnitude").get<double>();
    m.rank_deficient = j.at("rank_deficient").get<bool>();
    m.train_rmse = j.at("train_rmse").get<double>();
    return m;
  }
  throw std::runtime_error("load_model: unknown model_type '" + type + "'");
}

double predict_any(const AnyModel& model, const Eigen::VectorXd& features) {
  if (const auto* svr = std::get_if<SvrModel>(&model))
    return predict_svr(*svr, features);
  if (const auto* mlp = std::get_if<MlpModel>(&model))
    return predict_mlp(*mlp, features);
  return predict_lsq(std::get<LsqModel>(model), features);
}

}  // namespace hsc
