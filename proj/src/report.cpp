#include "gaborcert/report.hpp"

#include <cmath>
#include <ostream>

#include "gaborcert/config.hpp"

namespace gaborcert {

namespace {

// JSON has no infinity; nlohmann would write null anyway, say so explicitly.
nlohmann::ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

std::string verdict_name(Verdict v) {
  return v == Verdict::Certified ? "Certified" : "NotCertified";
}

nlohmann::ordered_json certificate_json(const FrameCertificate& c, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["verdict"] = verdict_name(c.verdict);
  j["reason"] = c.reason;
  j["interval"] = {{"lo", num(c.interval_lo)}, {"hi", num(c.interval_hi)}};
  j["delta"] = num(c.delta);
  j["block_sigma_min"] = num(c.block_sigma_min);
  j["hop_det_min"] = num(c.hop_det_min);
  j["x_certified"] = num(c.x_certified);
  j["extent"] = c.extent;
  j["block_count"] = c.block_count;
  j["profile_samples"] = c.profile_samples;
  j["epsilon"] = num(c.epsilon);
  j["sup_norm"] = num(c.sup_norm);
  j["inv_sup_core"] = num(c.inv_sup_core);
  j["hypothesis_report"] = {
      {"density_below_one", c.hypotheses.density_below_one},
      {"irrational_class", c.hypotheses.irrational_class},
      {"alpha_below_support", c.hypotheses.alpha_below_support},
      {"sup_norm_finite", c.hypotheses.sup_norm_finite},
      {"inv_sup_core_finite", c.hypotheses.inv_sup_core_finite},
  };
  j["params"] = {{"alpha", c.alpha}, {"beta", c.beta}, {"rational_class", c.rational_class}};
  j["window"] = c.window;
  j["tool_version"] = kToolVersion;
  j["seed"] = seed;
  return j;
}

void write_profile_csv(std::ostream& os, const DeterminantProfile& prof) {
  os << "x,abs_det,fingerprint_id\n";
  for (std::size_t i = 0; i < prof.x.size(); ++i)
    os << format_double(prof.x[i]) << ',' << format_double(std::abs(prof.det[i])) << ','
       << prof.fingerprint_id[i] << '\n';
}

void write_section_csv(std::ostream& os, const FiniteSectionEstimate& est) {
  os << "x,sigma_min,sigma_max\n";
  for (const SectionSample& s : est.per_x)
    os << format_double(s.x) << ',' << format_double(s.sigma_min) << ','
       << format_double(s.sigma_max) << '\n';
}

}  // namespace gaborcert
