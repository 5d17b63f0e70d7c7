#include "rmpu/io.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace rmpu {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  auto bad = [&] { return std::invalid_argument("cannot parse '" + text + "' as a rational"); };
  auto digits_only = [](const std::string& t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  // BigInt(string) reads a leading 0 as octal
  auto integer = [](const std::string& t) {
    const auto first = t.find_first_not_of('0');
    return first == std::string::npos ? BigInt(0) : BigInt(t.substr(first));
  };
  if (s.empty()) throw bad();
  bool negative = false;
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    pos = 1;
  }
  std::string body = s.substr(pos);
  Rational value;
  if (const auto slash = body.find('/'); slash != std::string::npos) {
    const std::string num = body.substr(0, slash);
    const std::string den = body.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den)) throw bad();
    const BigInt d = integer(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    value = Rational(integer(num), d);
  } else {
    int exponent = 0;
    if (const auto e = body.find_first_of("eE"); e != std::string::npos) {
      const std::string ex = body.substr(e + 1);
      const std::string ex_digits = (!ex.empty() && (ex[0] == '+' || ex[0] == '-')) ? ex.substr(1) : ex;
      if (!digits_only(ex_digits) || ex_digits.size() > 6) throw bad();
      exponent = std::stoi(ex);
      body = body.substr(0, e);
    }
    std::string int_part = body;
    std::string frac_part;
    if (const auto dot = body.find('.'); dot != std::string::npos) {
      int_part = body.substr(0, dot);
      frac_part = body.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) throw bad();
    if ((!int_part.empty() && !digits_only(int_part)) || (!frac_part.empty() && !digits_only(frac_part))) throw bad();
    const BigInt mantissa = integer(int_part + frac_part);
    exponent -= static_cast<int>(frac_part.size());
    value = Rational(mantissa) * ipow<Rational>(10, exponent);
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

MomentFile moments_from_json(const Json& j) {
  const Json& arr = j.is_object() ? j.at("moments") : j;
  if (!arr.is_array() || arr.empty()) throw std::invalid_argument("moment file must hold a non-empty array");
  MomentFile out;
  std::vector<Rational> exact;
  std::vector<double> real;
  for (const auto& v : arr) {
    if (v.is_string()) {
      exact.push_back(parse_rational(v.get<std::string>()));
      real.push_back(to_double(exact.back()));
    } else if (v.is_number_integer()) {
      exact.push_back(Rational(BigInt(v.get<std::int64_t>())));
      real.push_back(static_cast<double>(v.get<std::int64_t>()));
    } else if (v.is_number_float()) {
      out.exact = false;
      exact.push_back(Rational(0));
      real.push_back(v.get<double>());
    } else {
      throw std::invalid_argument("moment entries must be numbers or rational strings");
    }
  }
  if (out.exact) out.rational = MomentSequence<Rational>(std::move(exact));
  out.real = MomentSequence<double>(std::move(real));
  return out;
}

namespace {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace

MomentFile read_moment_file(const std::string& path) { return moments_from_json(read_json_file(path)); }

Json moments_to_json(const MomentSequence<Rational>& m) {
  Json arr = Json::array();
  for (const auto& v : m.values()) arr.push_back(to_string(v));
  return arr;
}

Json weingarten_to_json(const WeingartenTable<Rational>& table) {
  const ClassIndex& ci = class_index(table.k());
  Json classes = Json::array();
  for (int c = 0; c < ci.size(); ++c) {
    const Rational& v = table.class_value(c);
    classes.push_back({{"cycle_type", ci.type(c)},
                       {"num", boost::multiprecision::numerator(v).str()},
                       {"den", boost::multiprecision::denominator(v).str()}});
  }
  return {{"format", "rmpu-weingarten"}, {"version", 1}, {"dim", table.dim()}, {"k", table.k()}, {"classes", classes}};
}

WeingartenTable<Rational> weingarten_from_json(const Json& j) {
  if (j.value("format", "") != "rmpu-weingarten") throw std::invalid_argument("not a Weingarten cache file");
  if (j.value("version", 0) != 1) throw std::invalid_argument("unsupported Weingarten cache version");
  const auto dim = j.at("dim").get<std::int64_t>();
  const int k = j.at("k").get<int>();
  if (k < 1 || k > kWeingartenCap) throw std::invalid_argument("Weingarten cache k out of range");
  const ClassIndex& ci = class_index(k);
  std::vector<Rational> values(static_cast<std::size_t>(ci.size()));
  std::set<int> seen;
  for (const auto& entry : j.at("classes")) {
    const auto type = entry.at("cycle_type").get<std::vector<int>>();
    const int c = ci.of(class_representative(type));
    if (ci.type(c) != type) throw std::invalid_argument("cycle type not in canonical order");
    values[static_cast<std::size_t>(c)] =
        Rational(BigInt(entry.at("num").get<std::string>()), BigInt(entry.at("den").get<std::string>()));
    seen.insert(c);
  }
  if (static_cast<int>(seen.size()) != ci.size()) throw std::invalid_argument("Weingarten cache misses classes");
  return WeingartenTable<Rational>(dim, k, std::move(values));
}

Json observable_to_json(const ObservableSpec& spec) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < spec.matrix.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < spec.matrix.cols(); ++c) row.push_back({spec.matrix(r, c).real(), spec.matrix(r, c).imag()});
    rows.push_back(row);
  }
  return {{"matrix", rows},
          {"first_site", spec.first_site},
          {"num_sites", spec.num_sites},
          {"traceless", spec.traceless},
          {"norm_bound", spec.norm_bound}};
}

ObservableSpec observable_from_json(const Json& j) {
  ObservableSpec spec;
  const Json& rows = j.at("matrix");
  const auto n = static_cast<Eigen::Index>(rows.size());
  spec.matrix.resize(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Json& row = rows.at(static_cast<std::size_t>(r));
    if (static_cast<Eigen::Index>(row.size()) != n) throw std::invalid_argument("observable matrix must be square");
    for (Eigen::Index c = 0; c < n; ++c) {
      const Json& z = row.at(static_cast<std::size_t>(c));
      if (!z.is_array() || z.size() != 2) throw std::invalid_argument("matrix entries must be [re, im] pairs");
      spec.matrix(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  spec.first_site = j.value("first_site", 1);
  spec.num_sites = j.value("num_sites", 1);
  spec.traceless = j.value("traceless", false);
  spec.norm_bound = j.value("norm_bound", 1.0);
  spec.validate();
  return spec;
}

const std::vector<std::int64_t>& ExperimentManifest::axis(const std::string& name) const {
  const auto it = grid.find(name);
  if (it == grid.end() || it->second.empty()) throw std::invalid_argument("manifest grid lacks '" + name + "'");
  return it->second;
}

ExperimentManifest parse_manifest(const Json& j) {
  static const std::set<std::string> quantities = {"otoc_haar", "otoc_rmpu", "frame_potential",
                                                   "genus_counts", "cumulants", "identity_checks"};
  static const std::set<std::string> axes = {"k", "d", "r", "n", "chi", "D", "M"};
  if (!j.is_object()) throw std::invalid_argument("manifest: top level must be an object");
  if (j.value("schema_version", 0) != kManifestSchemaVersion) {
    throw std::invalid_argument("manifest.schema_version: expected " + std::to_string(kManifestSchemaVersion));
  }
  ExperimentManifest m;
  if (!j.contains("quantity") || !j["quantity"].is_string()) throw std::invalid_argument("manifest.quantity: missing");
  m.quantity = j["quantity"].get<std::string>();
  if (!quantities.contains(m.quantity)) throw std::invalid_argument("manifest.quantity: unknown '" + m.quantity + "'");
  if (j.contains("grid")) {
    if (!j["grid"].is_object()) throw std::invalid_argument("manifest.grid: must be an object");
    for (const auto& [key, value] : j["grid"].items()) {
      if (!axes.contains(key)) throw std::invalid_argument("manifest.grid." + key + ": unknown axis");
      if (!value.is_array()) throw std::invalid_argument("manifest.grid." + key + ": must be an array");
      for (const auto& v : value) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
          throw std::invalid_argument("manifest.grid." + key + ": entries must be positive integers");
        }
        m.grid[key].push_back(v.get<std::int64_t>());
      }
    }
  }
  m.moments = j.value("moments", Json::object());
  m.observables = j.value("observables", Json::object());
  if (j.contains("checks")) m.checks = j["checks"].get<std::vector<std::string>>();
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<std::int64_t>() < 0) throw std::invalid_argument("manifest.seed: must be a non-negative integer");
    m.seed = j["seed"].get<std::uint64_t>();
  }
  m.samples = j.value("samples", std::int64_t{0});
  if (m.samples < 0) throw std::invalid_argument("manifest.samples: must be non-negative");
  m.out = j.value("out", std::string("."));
  m.hash = hex64(fnv1a64(j.dump()));
  return m;
}

ExperimentManifest read_manifest(const std::string& path) { return parse_manifest(read_json_file(path)); }

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << value;
  return os.str();
}

std::string provenance_header(const std::string& manifest_hash, std::uint64_t seed) {
  return "# rmpu_version=" RMPU_VERSION "\n# manifest_hash=" + manifest_hash + "\n# seed=" + std::to_string(seed) + "\n";
}

}  // namespace rmpu
