#include "ginibre/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "ginibre/errors.hpp"

namespace ginibre {

namespace {

using nlohmann::json;

double parse_number(const std::string& s, const std::string& context) {
  if (s.empty()) throw InvalidArgument("malformed number in '" + context + "'");
  double v = 0.0;
  const auto res = std::from_chars(s.data() + (s[0] == '+' ? 1 : 0), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InvalidArgument("malformed number in '" + context + "'");
  }
  return v;
}

double parse_imag_coefficient(const std::string& s, const std::string& context) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_number(s, context);
}

json point_json(ComplexPoint z) { return json::array({z.real(), z.imag()}); }

std::vector<ComplexPoint> points_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw InvalidArgument(std::string(what) + ": expected an array of [re, im] pairs");
  std::vector<ComplexPoint> pts;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw InvalidArgument(std::string(what) + ": expected [re, im] pairs");
    }
    pts.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return pts;
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string(what) + ": " + e.what());
  }
}

}  // namespace

ComplexPoint parse_complex(const std::string& raw) {
  std::string t;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  if (t.empty()) throw InvalidArgument("empty complex token");
  if (t.back() != 'i') return {parse_number(t, raw), 0.0};
  t.pop_back();
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_imag_coefficient(t, raw)};
  return {parse_number(t.substr(0, split), raw), parse_imag_coefficient(t.substr(split), raw)};
}

PalmAnchor parse_anchor_list(const std::string& text) {
  std::vector<ComplexPoint> pts;
  std::string cur;
  bool any = false;
  auto flush = [&] {
    const bool blank = std::all_of(cur.begin(), cur.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (blank) {
      if (any) throw InvalidArgument("empty anchor token in '" + text + "'");
    } else {
      pts.push_back(parse_complex(cur));
    }
    cur.clear();
  };
  for (char c : text) {
    if (c == ';') {
      any = true;
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return PalmAnchor(std::move(pts));
}

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_complex(ComplexPoint z) {
  std::string s = format_real(z.real());
  const double im = z.imag();
  s += (std::signbit(im) ? "-" : "+");
  s += format_real(std::abs(im));
  s += "i";
  return s;
}

std::string configuration_to_json(const Configuration& c) {
  json j = json::array();
  for (const auto& z : c.points()) j.push_back(point_json(z));
  return j.dump();
}

Configuration configuration_from_json(const std::string& text) {
  return Configuration(points_from_json(parse_json(text, "configuration"), "configuration"));
}

std::string radial_to_json(const RadialConfiguration& r) {
  json j = json::array();
  for (double y : r.radii_sq()) j.push_back(y);
  return j.dump();
}

RadialConfiguration radial_from_json(const std::string& text) {
  const json j = parse_json(text, "radial configuration");
  if (!j.is_array()) throw InvalidArgument("radial configuration: expected an array of reals");
  std::vector<double> v;
  for (const auto& e : j) {
    if (!e.is_number()) throw InvalidArgument("radial configuration: expected an array of reals");
    v.push_back(e.get<double>());
  }
  return RadialConfiguration(std::move(v));
}

KernelSpec kernel_spec_from_json(const std::string& text) {
  const json j = parse_json(text, "kernel spec");
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) {
    throw InvalidArgument("kernel spec: missing \"family\"");
  }
  Gauge gauge = Gauge::Analytic;
  if (j.contains("gauge")) {
    const std::string g = j["gauge"].get<std::string>();
    if (g == "lebesgue") {
      gauge = Gauge::Lebesgue;
    } else if (g != "analytic") {
      throw InvalidArgument("kernel spec: unknown gauge '" + g + "'");
    }
  }
  auto get_int = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) throw InvalidArgument(std::string("kernel spec: missing integer \"") + key + "\"");
    return j[key].get<int>();
  };
  const std::string family = j["family"].get<std::string>();
  if (family == "infinite") return KernelSpec::infinite(gauge);
  if (family == "truncated") return KernelSpec::truncated(get_int("n"), gauge);
  if (family == "origin_palm") return KernelSpec::origin_palm(get_int("ell"), gauge);
  if (family == "palm") {
    if (!j.contains("anchors")) throw InvalidArgument("kernel spec: palm family needs \"anchors\"");
    const PalmAnchor x(points_from_json(j["anchors"], "kernel spec anchors"));
    const KernelSpec base = j.contains("n") ? KernelSpec::truncated(get_int("n"), gauge) : KernelSpec::infinite(gauge);
    return KernelSpec::palm(base, x);
  }
  throw InvalidArgument("kernel spec: unknown family '" + family + "'");
}

std::string kernel_spec_to_json(const KernelSpec& spec) {
  json j;
  const auto& f = spec.family();
  if (std::holds_alternative<InfiniteK>(f)) {
    j["family"] = "infinite";
  } else if (const auto* t = std::get_if<TruncatedK>(&f)) {
    j["family"] = "truncated";
    j["n"] = t->n;
  } else if (const auto* o = std::get_if<OriginPalmK>(&f)) {
    j["family"] = "origin_palm";
    j["ell"] = o->ell;
  } else {
    const auto& p = std::get<PalmK>(f);
    j["family"] = "palm";
    if (p.n) j["n"] = *p.n;
    json a = json::array();
    for (const auto& z : p.anchors.anchors()) a.push_back(point_json(z));
    j["anchors"] = a;
  }
  j["gauge"] = spec.gauge() == Gauge::Lebesgue ? "lebesgue" : "analytic";
  return j.dump();
}

void write_configurations_csv(std::ostream& os, std::span<const Configuration> samples) {
  os << "sample_id,re,im\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (const auto& z : samples[i].points()) {
      os << i << ',' << format_real(z.real()) << ',' << format_real(z.imag()) << '\n';
    }
  }
}

void write_radial_csv(std::ostream& os, std::span<const RadialConfiguration> samples) {
  os << "sample_id,radius_sq\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (double y : samples[i].radii_sq()) os << i << ',' << format_real(y) << '\n';
  }
}

Configuration read_configuration_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Io("cannot open configuration file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') return configuration_from_json(text);
  std::istringstream lines(text);
  std::string line;
  if (!std::getline(lines, line)) throw Io("empty configuration file '" + path + "'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "sample_id,re,im") throw Io("configuration file '" + path + "': expected header sample_id,re,im");
  std::vector<ComplexPoint> pts;
  std::string first_id;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) throw Io("configuration file '" + path + "': malformed row");
    const std::string id = line.substr(0, c1);
    if (first_id.empty()) first_id = id;
    if (id != first_id) break;
    pts.emplace_back(parse_number(line.substr(c1 + 1, c2 - c1 - 1), line), parse_number(line.substr(c2 + 1), line));
  }
  return Configuration(std::move(pts));
}

}  // namespace ginibre
