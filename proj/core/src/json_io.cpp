#include "matord/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace matord {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedInput, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) malformed(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

json cplx_to_json(cplx z) { return json::array({real_to_json(z.real()), real_to_json(z.imag())}); }

cplx cplx_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) malformed("complex numbers are [re, im] pairs");
  return {real_from_json(j[0]), real_from_json(j[1])};
}

json vec_list(const std::vector<Vec>& vs) {
  json a = json::array();
  for (const Vec& v : vs) a.push_back(to_json(v));
  return a;
}

std::vector<Vec> vec_list_from(const json& j) {
  if (!j.is_array()) malformed("generator lists are arrays");
  std::vector<Vec> out;
  for (const json& v : j) out.push_back(vec_from_json(v));
  return out;
}

json mats(const std::vector<Mat>& ms) {
  json a = json::array();
  for (const Mat& m : ms) a.push_back(to_json(m));
  return a;
}

}  // namespace

json real_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double real_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "Infinity") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::nan("");
  }
  malformed("expected a number or \"inf\"");
}

json to_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(cplx_to_json(v(i)));
  return a;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array()) malformed("vectors are arrays of [re, im]");
  Vec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(i) = cplx_from_json(j[i]);
  return v;
}

json to_json(const Mat& M) {
  json rows = json::array();
  for (int i = 0; i < M.rows(); ++i) rows.push_back(to_json(Vec(M.row(i).transpose())));
  return rows;
}

Mat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) malformed("matrices are non-empty arrays of rows");
  Mat M(j.size(), j[0].size());
  for (size_t i = 0; i < j.size(); ++i) {
    Vec r = vec_from_json(j[i]);
    if (r.size() != M.cols()) malformed("ragged matrix");
    M.row(i) = r.transpose();
  }
  return M;
}

json to_json(const BaseSpace& X) {
  json j;
  j["p"] = real_to_json(X.p);
  switch (X.model) {
    case BaseModel::LatticeLp: {
      j["model"] = "lattice_lp";
      j["dim"] = X.dim;
      json w = json::array();
      for (int k = 0; k < X.dim; ++k) w.push_back(real_to_json(X.weights(k)));
      j["weights"] = w;
      break;
    }
    case BaseModel::Schatten:
      j["model"] = "schatten";
      j["m"] = X.m;
      break;
    case BaseModel::Custom:
      j["model"] = "custom";
      j["dim"] = X.dim;
      j["cone_generators"] = vec_list(X.cone_generators);
      j["dual_generators"] = vec_list(X.dual_generators);
      j["pointed"] = X.pointed;
      break;
  }
  return j;
}

BaseSpace space_from_json(const json& j) {
  const json& model = field(j, "model");
  if (!model.is_string()) malformed("'model' must be a string");
  const std::string name = model.get<std::string>();
  const double p = real_from_json(field(j, "p"));
  if (name == "lattice_lp" || name == "lattice") {
    const int d = int_field(j, "dim");
    RVec w;
    if (j.contains("weights")) {
      const json& a = j.at("weights");
      if (!a.is_array() || static_cast<int>(a.size()) != d) malformed("'weights' needs dim entries");
      w.resize(d);
      for (int k = 0; k < d; ++k) w(k) = real_from_json(a[k]);
    }
    return BaseSpace::lattice(d, p, w);
  }
  if (name == "schatten") return BaseSpace::schatten(int_field(j, "m"), p);
  if (name == "custom") {
    const int d = int_field(j, "dim");
    bool pointed = j.value("pointed", true);
    return BaseSpace::custom(d, p, vec_list_from(field(j, "cone_generators")),
                             vec_list_from(field(j, "dual_generators")), pointed);
  }
  malformed("unknown model '" + name + "'");
}

json to_json(const LeveledElement& x) {
  json j;
  j["level"] = x.level();
  j["base_dim"] = x.base_dim();
  json c = json::array();
  for (int i = 0; i < x.level(); ++i)
    for (int k = 0; k < x.level(); ++k) c.push_back(to_json(x.entry(i, k)));
  j["coeffs"] = c;
  return j;
}

LeveledElement element_from_json(const json& j) {
  const int n = int_field(j, "level"), d = int_field(j, "base_dim");
  if (n < 1 || d < 1) malformed("level and base_dim must be positive");
  const json& c = field(j, "coeffs");
  if (!c.is_array() || static_cast<int>(c.size()) != n * n) malformed("'coeffs' needs level^2 entries");
  LeveledElement x(n, d);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      Vec v = vec_from_json(c[i * n + k]);
      if (v.size() != d) malformed("each coefficient needs base_dim entries");
      x.set_entry(i, k, v);
    }
  if (!x.is_finite()) throw Error(ErrorCode::NonFinite, "element has non-finite entries");
  return x;
}

json to_json(const NormBracket& b) {
  return {{"lower", real_to_json(b.lower)}, {"upper", real_to_json(b.upper)},
          {"exact", b.exact()}, {"method", b.method}};
}

json to_json(const ConeVerdict& v) {
  json c;
  c["type"] = v.certificate.type;
  if (!v.certificate.coefficients.empty()) c["coefficients"] = mats(v.certificate.coefficients);
  if (v.certificate.functional.size()) c["functional"] = to_json(v.certificate.functional);
  if (v.certificate.vector.size()) c["vector"] = to_json(v.certificate.vector);
  if (!v.certificate.map.empty()) c["map"] = mats(v.certificate.map);
  c["value"] = real_to_json(v.certificate.value);
  if (!v.certificate.note.empty()) c["note"] = v.certificate.note;
  return {{"verdict", verdict_name(v.verdict)}, {"tol", real_to_json(v.tol)}, {"method", v.method},
          {"certificate", c}};
}

ConeVerdict verdict_from_json(const json& j) {
  ConeVerdict v;
  const std::string name = field(j, "verdict").get<std::string>();
  if (name == "member") v.verdict = Verdict::Member;
  else if (name == "non-member") v.verdict = Verdict::NonMember;
  else if (name == "UNDECIDED") v.verdict = Verdict::Undecided;
  else malformed("unknown verdict '" + name + "'");
  v.tol = real_from_json(field(j, "tol"));
  v.method = j.value("method", "");
  if (j.contains("certificate")) {
    const json& c = j.at("certificate");
    v.certificate.type = c.value("type", "none");
    if (c.contains("coefficients"))
      for (const json& m : c.at("coefficients")) v.certificate.coefficients.push_back(mat_from_json(m));
    if (c.contains("functional")) v.certificate.functional = vec_from_json(c.at("functional"));
    if (c.contains("vector")) v.certificate.vector = vec_from_json(c.at("vector"));
    if (c.contains("map"))
      for (const json& m : c.at("map")) v.certificate.map.push_back(mat_from_json(m));
    if (c.contains("value")) v.certificate.value = real_from_json(c.at("value"));
    v.certificate.note = c.value("note", "");
  }
  return v;
}

json to_json(const BlockWitness& w) {
  return {{"x1", to_json(w.x1)},       {"x2", to_json(w.x2)},
          {"norm1", to_json(w.norm1)}, {"norm2", to_json(w.norm2)},
          {"value", real_to_json(w.value)}, {"method", w.method}};
}

json to_json(const NormalityProbe& p) {
  json j = {{"bound", real_to_json(p.bound)}, {"pair_bound", real_to_json(p.pair_bound)},
            {"samples", p.samples}};
  if (p.u.level() > 0) j["worst"] = {{"u1", to_json(p.u1)}, {"u", to_json(p.u)}, {"u2", to_json(p.u2)}};
  return j;
}

json to_json(const RegularityReport& r) {
  json j = {{"level", r.level},
            {"normality", to_json(r.normality)},
            {"generation_upper_bound", real_to_json(r.generation_upper_bound)},
            {"budget", r.budget},
            {"seed", r.seed},
            {"variant", r.variant}};
  if (r.worst_x.level() > 0) {
    j["worst_x"] = to_json(r.worst_x);
    j["worst_witness"] = to_json(r.worst_witness);
  }
  return j;
}

json to_json(const AxiomReport& r) {
  return {{"name", r.name},           {"trials", r.trials},
          {"violations", r.violations}, {"undecided", r.undecided},
          {"worst_excess", real_to_json(r.worst_excess)}, {"failures", r.failures},
          {"passed", r.passed()}};
}

json to_json(const RuanReport& r) {
  return {{"compression", to_json(r.compression)}, {"direct_sum", to_json(r.direct_sum)},
          {"seed", r.seed}, {"passed", r.passed()}};
}

json to_json(const ConeAxiomReport& r) {
  return {{"compression", to_json(r.compression)}, {"direct_sum", to_json(r.direct_sum)},
          {"addition", to_json(r.addition)},       {"scaling", to_json(r.scaling)},
          {"hermitian", to_json(r.hermitian)},     {"pointedness", to_json(r.pointedness)},
          {"seed", r.seed},                        {"passed", r.passed()}};
}

json to_json(const MinNiceReport& r) {
  return {{"samples", r.samples},
          {"admissible", r.admissible},
          {"norm_violations", r.norm_violations},
          {"planted_violators", r.planted_violators},
          {"rejected_violators", r.rejected_violators},
          {"passed", r.passed()}};
}

json to_json(const MaxNiceDecomposition& d) {
  return {{"x", vec_list(d.x)},
          {"xi", to_json(d.xi)},
          {"eta", to_json(d.eta)},
          {"residual", real_to_json(d.residual)},
          {"xi_sum_norm", real_to_json(d.xi_sum_norm)},
          {"eta_sum_norm", real_to_json(d.eta_sum_norm)}};
}

json to_json(const CbcCbReport& r) {
  return {{"cbc_lower", real_to_json(r.cbc_lower)}, {"cb_lower", real_to_json(r.cb_lower)},
          {"c1", real_to_json(r.c1)},               {"c2", real_to_json(r.c2)},
          {"levels", r.levels},                     {"samples", r.samples},
          {"sandwich_holds", r.sandwich_holds}};
}

json to_json(const AmObstructionReport& r) {
  return {{"n", r.n},
          {"N", r.N},
          {"family", mats(r.family)},
          {"anticommutator_sum", real_to_json(r.anticommutator_sum)},
          {"factorization_upper", real_to_json(r.factorization_upper)},
          {"u_norm_upper", real_to_json(r.u_norm_upper)},
          {"sum_norm", real_to_json(r.sum_norm)},
          {"bound", real_to_json(r.bound)},
          {"averaging", r.averaging},
          {"margin", real_to_json(r.margin)},
          {"samples", r.samples},
          {"dominating", r.dominating},
          {"expectation_ok", r.expectation_ok},
          {"norm_ok", r.norm_ok},
          {"worst_slack", real_to_json(r.worst_slack)},
          {"budget", r.budget},
          {"seed", r.seed},
          {"passed", r.passed()}};
}

json to_json(const PositivisationResult& r) {
  return {{"value_upper", real_to_json(r.value_upper)}, {"value_lower", real_to_json(r.value_lower)},
          {"completion", to_json(r.completion)},        {"method", r.method},
          {"budget", r.budget},                         {"seed", r.seed}};
}

json to_json(const AlphaPlusProperties& r) {
  return {{"ruan_compression", to_json(r.ruan_compression)},
          {"ruan_direct_sum", to_json(r.ruan_direct_sum)},
          {"regularity", to_json(r.regularity)},
          {"seminorm", to_json(r.seminorm)},
          {"idempotence", to_json(r.idempotence)},
          {"idempotence_gap", real_to_json(r.idempotence_gap)},
          {"passed", r.passed()}};
}

json to_json(const RenormReport& r) {
  return {{"c_generation", real_to_json(r.c_generation)},
          {"c_normality", real_to_json(r.c_normality)},
          {"samples", r.samples},
          {"upper_violations", r.upper_violations},
          {"lower_violations", r.lower_violations},
          {"worst_upper_ratio", real_to_json(r.worst_upper_ratio)},
          {"worst_lower_ratio", real_to_json(r.worst_lower_ratio)},
          {"passed", r.passed()}};
}

json to_json(const ProductsReport& r) {
  return {{"trials", r.trials}, {"failures", r.failures},
          {"worst_min_eig", real_to_json(r.worst_min_eig)}, {"passed", r.passed()}};
}

json to_json(const GenNormalDualityReport& r) {
  json j = {{"constant", real_to_json(r.constant)},
            {"dual_normality_bound", real_to_json(r.dual_normality_bound)},
            {"dual_generation_bound", real_to_json(r.dual_generation_bound)},
            {"primal_exact", r.primal_exact},
            {"dual_exact", r.dual_exact},
            {"samples", r.samples},
            {"normality_ok", r.normality_ok},
            {"generation_ok", r.generation_ok},
            {"passed", r.passed()}};
  if (!r.passed() && r.worst_x.level() > 0) j["worst_x"] = to_json(r.worst_x);
  return j;
}

json round_numbers(const json& j, int digits) {
  if (j.is_number_float()) {
    double v = j.get<double>();
    if (!std::isfinite(v)) return j;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return std::stod(buf);
  }
  if (j.is_array() || j.is_object()) {
    json out = j;
    for (auto it = out.begin(); it != out.end(); ++it) *it = round_numbers(*it, digits);
    return out;
  }
  return j;
}

}  // namespace matord
