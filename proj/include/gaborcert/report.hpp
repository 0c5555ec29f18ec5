#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "gaborcert/certify.hpp"
#include "gaborcert/framebound.hpp"

namespace gaborcert {

inline constexpr const char* kToolVersion = "0.3.1";

std::string verdict_name(Verdict v);

nlohmann::ordered_json certificate_json(const FrameCertificate& c, std::uint64_t seed);

// CSV "x,abs_det,fingerprint_id".
void write_profile_csv(std::ostream& os, const DeterminantProfile& prof);

// CSV "x,sigma_min,sigma_max".
void write_section_csv(std::ostream& os, const FiniteSectionEstimate& est);

}  // namespace gaborcert
