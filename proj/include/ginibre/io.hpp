#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "ginibre/core.hpp"
#include "ginibre/kernel.hpp"

namespace ginibre {

// Semicolon-separated complex tokens such as "0.5-1.2i; 2; -i". Whitespace is ignored.
PalmAnchor parse_anchor_list(const std::string& text);
ComplexPoint parse_complex(const std::string& token);
std::string format_complex(ComplexPoint z);

// Round-trip decimal formatting used by all CSV and JSON writers.
std::string format_real(double v);

std::string configuration_to_json(const Configuration& c);
Configuration configuration_from_json(const std::string& text);
std::string radial_to_json(const RadialConfiguration& r);
RadialConfiguration radial_from_json(const std::string& text);

// {"family": "infinite"|"truncated"|"palm"|"origin_palm", "n": N, "ell": L,
//  "anchors": [[re, im], ...], "gauge": "analytic"|"lebesgue"}
KernelSpec kernel_spec_from_json(const std::string& text);
std::string kernel_spec_to_json(const KernelSpec& spec);

void write_configurations_csv(std::ostream& os, std::span<const Configuration> samples);
void write_radial_csv(std::ostream& os, std::span<const RadialConfiguration> samples);

// JSON array of [re, im] pairs, or a `sample_id,re,im` CSV (first sample id).
Configuration read_configuration_file(const std::string& path);

}  // namespace ginibre
