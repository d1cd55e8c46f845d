#include "wclique/io.hpp"

#include "wclique/density.hpp"
#include "wclique/types.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace wclique {

namespace {

Json vector_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

const char* law_name(const LimitLaw& law) {
  if (law.is_degenerate()) return "Degenerate";
  if (law.is_gaussian()) return "Gaussian";
  return "ChiSquareMix";
}

}  // namespace

StepGraphon parse_graphon(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("graphon file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("mu") || !doc.contains("values"))
    throw InputError("graphon file needs fields \"mu\" and \"values\"");
  RawGraphon raw;
  try {
    raw.mu = doc.at("mu").get<std::vector<double>>();
    raw.values = doc.at("values").get<std::vector<std::vector<double>>>();
  } catch (const Json::exception&) {
    throw InputError("\"mu\" must be an array of numbers and \"values\" an array of arrays of numbers");
  }
  return validate_graphon(raw);
}

StepGraphon read_graphon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return parse_graphon(buf.str());
}

Json graphon_to_json(const StepGraphon& w) {
  const RawGraphon raw = to_raw(w);
  return Json{{"mu", raw.mu}, {"values", raw.values}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw IoError("error writing " + path.string());
}

void write_graphon(const StepGraphon& w, const std::filesystem::path& path) {
  write_text(path, graphon_to_json(w).dump(2) + "\n");
}

Json law_to_json(const LimitLaw& law) {
  Json out;
  out["type"] = law_name(law);
  out["case"] = std::string(1, law.theorem_case());
  out["r"] = law.r;
  out["t_r"] = law.t_r;
  out["exponent"] = law.exponent();
  if (const auto* d = std::get_if<Degenerate>(&law.kind)) {
    out["degenerate"] = d->kind == Degenerate::Kind::Empty ? "empty" : "complete";
  } else if (const auto* g = std::get_if<Gaussian>(&law.kind)) {
    out["sigma_hat"] = g->sigma_hat;
  } else {
    const auto& mix = std::get<ChiSquareMix>(law.kind);
    out["sigma"] = mix.sigma;
    out["coefficients"] = mix.coefficients;
  }
  out["vwr_spectrum"] = law.vwr_spectrum.eigenvalues();
  out["near_degenerate"] = law.near_degenerate;
  return out;
}

Json analysis_report(const StepGraphon& w, int r, double tol) {
  const LimitLaw law = classify_limit(w, r, tol);
  Json out;
  out["graphon"] = graphon_to_json(w);
  out["r"] = r;
  out["t_r"] = law.t_r;
  out["clique_profile"] = vector_json(clique_profile(w, r));
  out["kr_regular"] = is_kr_regular(w, r, tol);
  out["law"] = law_to_json(law);
  if (!law.is_degenerate()) {
    out["sigma_sq"] = sigma_sq(w, r);
    out["sigma_hat"] = sigma_hat(w, r);
    out["variance_of_limit"] = variance_of_limit(law);
    if (law.is_chi_square_mix()) {
      out["pure_normal"] = is_pure_normal(w, r, tol);
      out["normal_free"] = is_normal_free(w, r, tol);
      bool within = true;
      for (double l : law.vwr_spectrum.eigenvalues()) within = within && std::abs(l) <= law.t_r + 1e-8;
      out["vwr_spectrum_within_degree"] = within;
    }
  }
  return out;
}

Json experiment_report_to_json(const ExperimentReport& rep) {
  Json out;
  out["r"] = rep.r;
  out["n"] = rep.n;
  out["trials"] = rep.trials;
  out["seed"] = rep.seed;
  out["law"] = law_to_json(rep.law);
  out["expected_count"] = rep.expected_count;
  out["mean_count"] = rep.mean_count;
  out["sd_count"] = rep.sd_count;
  if (!rep.standardized.empty()) {
    Json moments = Json::array();
    for (const auto& m : rep.moments)
      moments.push_back(Json{{"m", m.m}, {"empirical", m.empirical}, {"standard_error", m.standard_error},
                             {"theoretical", m.theoretical}});
    out["moments"] = moments;
    out["variance"] = Json{{"empirical", rep.variance}, {"standard_error", rep.variance_se}, {"theoretical", rep.variance_theory}};
    out["skewness"] = Json{{"empirical", rep.skewness}, {"standard_error", rep.skewness_se}};
    out["ks_distance"] = rep.ks_distance;
  }
  if (rep.stein) {
    out["stein_bound"] = Json{{"value", rep.stein->value},
                              {"dependency_degree", rep.stein->dependency_degree},
                              {"sigma_n", rep.stein->sigma_n}};
  }
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  out["checks"] = checks;
  out["all_pass"] = rep.all_pass();
  return out;
}

}  // namespace wclique
