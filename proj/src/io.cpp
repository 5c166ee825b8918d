#include "mqsim/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace mqsim {

namespace {

constexpr const char* kSchema = "mqsim-result-v1";

std::string axis_name(Axis a) {
  switch (a) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
  }
  return "?";
}

nlohmann::json spectrum_json(const CoherenceSpectrum& s) {
  nlohmann::json orders = nlohmann::json::array();
  nlohmann::json vals = nlohmann::json::array();
  for (int n = -s.n_max; n <= s.n_max; ++n) {
    orders.push_back(n);
    vals.push_back(s.at(n));
  }
  return {{"axis", axis_name(s.axis)}, {"orders", orders}, {"intensity", vals},
          {"total", s.total}};
}

nlohmann::json fit_json(const GaussianFit& f) {
  return {{"sigma", f.sigma},       {"n_eff", f.n_eff},
          {"residual", f.residual}, {"amplitude", f.amplitude},
          {"parity", f.parity == 0 ? "even" : "odd"}};
}

std::string dump(const nlohmann::json& j) { return j.dump(1) + "\n"; }

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string oned_csv(const OneDResult& r) {
  std::string out = "order,intensity\n";
  for (int n = -r.spectrum.n_max; n <= r.spectrum.n_max; ++n) {
    const double v = r.spectrum.at(n);
    if (v != 0.0) out += std::to_string(n) + "," + format_g17(v) + "\n";
  }
  return out;
}

std::string oned_json(const OneDResult& r, const nlohmann::json& provenance) {
  nlohmann::json j;
  j["schema"] = kSchema;
  j["kind"] = r.basis == Axis::Z ? "oned-z" : "oned-x";
  j["config"] = provenance;
  j["timing"] = {{"loops", r.loops}, {"tau_s", r.tau}};
  j["mode"] = r.mode == RunMode::Collapsed ? "collapsed" : "network";
  j["state_purity"] = r.state_purity;
  j["phi"] = r.phi;
  j["signal"] = r.signal;
  j["spectrum"] = spectrum_json(r.spectrum);
  j["checks"] = {{"parseval_error", r.parseval_error},
                 {"symmetry_error", r.symmetry_error},
                 {"reality_error", r.reality_error}};
  return dump(j);
}

std::string twod_csv(const TwoDResult& r) {
  std::string out = "x_order,z_order,intensity\n";
  for (int nx = -r.n_max; nx <= r.n_max; ++nx)
    for (int nz = -r.n_max; nz <= r.n_max; ++nz)
      out += std::to_string(nx) + "," + std::to_string(nz) + "," +
             format_g17(r.order_map(nx + r.n_max, nz + r.n_max)) + "\n";
  return out;
}

std::string twod_json(const TwoDResult& r, const nlohmann::json& provenance) {
  nlohmann::json j;
  j["schema"] = kSchema;
  j["kind"] = "twod";
  j["config"] = provenance;
  j["timing"] = {{"loops", r.loops}, {"tau_s", r.tau}};
  j["state_purity"] = r.state_purity;
  j["n_max"] = r.n_max;
  j["phi"] = r.phi;
  j["beta"] = r.beta;
  nlohmann::json grid = nlohmann::json::array();
  for (Eigen::Index i = 0; i < r.signal.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < r.signal.cols(); ++k) row.push_back(r.signal(i, k));
    grid.push_back(row);
  }
  j["signal"] = grid;
  j["marginal_x"] = spectrum_json(r.marginal_x());
  j["marginal_z"] = spectrum_json(r.marginal_z());
  j["checks"] = {{"reality_error", r.reality_error}};
  return dump(j);
}

std::string decay_csv(const DecayResult& r) {
  std::string out = "time_s,zero_quantum,normalized";
  for (int n : r.x_orders) out += ",contrib_x" + std::to_string(n);
  out += "\n";
  for (size_t t = 0; t < r.times.size(); ++t) {
    out += format_g17(r.times[t]) + "," + format_g17(r.zero_quantum[t]) + "," +
           format_g17(r.normalized[t]);
    for (size_t k = 0; k < r.x_orders.size(); ++k)
      out += "," + format_g17(r.contributions[k][t]);
    out += "\n";
  }
  return out;
}

std::string decay_json(const DecayResult& r, const nlohmann::json& provenance) {
  nlohmann::json j;
  j["schema"] = kSchema;
  j["kind"] = "decay";
  j["config"] = provenance;
  j["times_s"] = r.times;
  j["zero_quantum"] = r.zero_quantum;
  j["normalized"] = r.normalized;
  j["x_orders"] = r.x_orders;
  j["contributions"] = r.contributions;
  j["checks"] = {{"sum_check_error", r.sum_check_error}};
  return dump(j);
}

std::string sweep_csv(const SweepResult& r) {
  std::string out =
      "loops,tau_s,sigma_z,n_eff_z,residual_z,sigma_x,n_eff_x,residual_x\n";
  for (const SweepPoint& p : r.points)
    out += std::to_string(p.loops) + "," + format_g17(p.tau) + "," +
           format_g17(p.z.sigma) + "," + format_g17(p.z.n_eff) + "," +
           format_g17(p.z.residual) + "," + format_g17(p.x.sigma) + "," +
           format_g17(p.x.n_eff) + "," + format_g17(p.x.residual) + "\n";
  return out;
}

std::string sweep_json(const SweepResult& r, const nlohmann::json& provenance) {
  nlohmann::json j;
  j["schema"] = kSchema;
  j["kind"] = "spin-count-sweep";
  j["config"] = provenance;
  nlohmann::json pts = nlohmann::json::array();
  for (const SweepPoint& p : r.points)
    pts.push_back({{"loops", p.loops},
                   {"tau_s", p.tau},
                   {"fit_z", fit_json(p.z)},
                   {"fit_x", fit_json(p.x)}});
  j["points"] = pts;
  j["slope_nx_vs_nz"] = r.slope;
  return dump(j);
}

std::string aht_csv(const AhtResult& r) {
  std::string out =
      "coupling_scale,cycle16_scale,cycle16_residual,cycle8_scale,cycle8_residual\n";
  for (const AhtPoint& p : r.points)
    out += format_g17(p.coupling_scale) + "," + format_g17(p.fit_16.scale) + "," +
           format_g17(p.fit_16.residual) + "," + format_g17(p.fit_8.scale) + "," +
           format_g17(p.fit_8.residual) + "\n";
  return out;
}

std::string aht_json(const AhtResult& r, const nlohmann::json& provenance) {
  nlohmann::json j;
  j["schema"] = kSchema;
  j["kind"] = "aht-check";
  j["config"] = provenance;
  j["ideal_pulses"] = r.ideal;
  nlohmann::json pts = nlohmann::json::array();
  for (const AhtPoint& p : r.points)
    pts.push_back({{"coupling_scale", p.coupling_scale},
                   {"cycle_time_16_s", p.cycle_time_16},
                   {"cycle16", {{"scale", p.fit_16.scale}, {"residual", p.fit_16.residual}}},
                   {"cycle8", {{"scale", p.fit_8.scale}, {"residual", p.fit_8.residual}}}});
  j["points"] = pts;
  return dump(j);
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace mqsim
