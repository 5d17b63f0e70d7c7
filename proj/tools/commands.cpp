#include "commands.hpp"

#include "rmpu/fit.hpp"
#include "rmpu/mcsim.hpp"
#include "rmpu/ncposet.hpp"
#include "rmpu/predict.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace rmpu::cli {

namespace {

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    if (const auto parent = std::filesystem::path(path).parent_path(); !parent.empty()) {
      std::filesystem::create_directories(parent);
    }
    file_.open(path);
    if (!file_) throw std::invalid_argument("cannot write '" + path + "'");
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string invocation_hash(const Options& o) { return hex64(fnv1a64(o.invocation)); }

MomentFile parse_moments(const std::string& text) {
  if (!text.empty() && text[0] == '@') return read_moment_file(text.substr(1));
  Json arr = Json::array();
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) arr.push_back(item);
  return moments_from_json(arr);
}

// Default observable: a rank-D/2 projector, m_j = 1/2.
MomentFile moments_or_default(const std::string& text, int k) {
  if (!text.empty()) return parse_moments(text);
  Json arr = Json::array();
  for (int j = 0; j < k; ++j) arr.push_back("1/2");
  return moments_from_json(arr);
}

int max_k(const Options& o) { return *std::max_element(o.k.begin(), o.k.end()); }

int r_for_chi(std::int64_t chi, int d) {
  int r = 0;
  std::int64_t v = 1;
  while (v < chi) {
    v *= d;
    ++r;
  }
  if (v != chi || r < 1) throw std::invalid_argument("chi = " + std::to_string(chi) + " is not a power of d = " + std::to_string(d));
  return r;
}

std::vector<std::int64_t> chi_values(const Options& o) {
  if (!o.chi_list.empty()) return o.chi_list;
  std::int64_t chi = 1;
  for (int i = 0; i < o.r; ++i) chi *= o.d;
  return {chi};
}

ObservableSpec observable_from_flag(const std::string& text, int first_site, int site_dim, int dim_sites,
                                    std::uint64_t seed, std::uint64_t stream) {
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw std::invalid_argument("cannot open '" + text.substr(1) + "'");
    return observable_from_json(Json::parse(in));
  }
  ObservableParams p;
  p.seed = seed;
  p.stream = stream;
  std::int64_t local = 1;
  for (int i = 0; i < dim_sites; ++i) local *= site_dim;
  p.rank = local / 2;
  if (text == "projector" || text == "shifted_projector" || text == "random_hermitian") {
    return make_observable(parse_observable_kind(text), p, first_site, dim_sites, site_dim);
  }
  p.pauli = text;
  return make_observable(ObservableKind::pauli_string, p, first_site, static_cast<int>(text.size()), site_dim);
}

// Exact values double as floats so all rows share one CSV format.
template <typename Fn>
double eval(const MomentFile& a, const MomentFile& b, Fn&& fn) {
  if (a.exact && b.exact) return to_double(fn(a.rational, b.rational));
  return to_double(fn(a.real, b.real));
}

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

Json summary_json(const ExperimentManifest& m, const std::vector<Check>& checks) {
  Json c = Json::array();
  bool all = true;
  for (const auto& ch : checks) {
    c.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
    all = all && ch.passed;
  }
  return {{"version", RMPU_VERSION}, {"manifest_hash", m.hash}, {"seed", m.seed},
          {"quantity", m.quantity}, {"checks", c}, {"all_passed", all}};
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

}  // namespace

std::string error_json(const std::string& type, const std::string& message) {
  return Json{{"error", {{"type", type}, {"message", message}}}}.dump();
}

int wg_table(const Options& o) {
  const std::int64_t dim = o.dim > 0 ? o.dim : o.d;
  Json out = Json::array();
  for (int k : o.k) {
    Json j = weingarten_to_json(weingarten<Rational>(dim, k));
    j["provenance"] = {{"version", RMPU_VERSION}, {"manifest_hash", invocation_hash(o)}, {"seed", o.seed}};
    out.push_back(j);
  }
  Sink sink(o.out);
  sink.os() << (out.size() == 1 ? out[0] : out).dump(2) << '\n';
  return 0;
}

int nc_count(const Options& o) {
  std::vector<CountRow> rows;
  using clock = std::chrono::steady_clock;
  auto timed = [&](int k, int m, const std::string& family, auto&& fn) {
    const auto t0 = clock::now();
    const std::uint64_t count = fn();
    const double ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    rows.push_back({k, m, family, count, ms});
  };
  for (int k = 1; k <= max_k(o); ++k) {
    timed(k, 1, "noncrossing", [&] { return static_cast<std::uint64_t>(enumerate_nc(k).size()); });
    timed(k, 2, "genus0_pairs", [&] { return count_two_chains(k); });
    if (k <= kEnumerationCap) timed(k, 2, "genus1_pairs", [&] { return count_genus_one_pairs(k); });
  }
  Sink sink(o.out);
  sink.os() << provenance_header(invocation_hash(o), o.seed);
  write_count_csv(sink.os(), rows);
  return 0;
}

int cumulants(const Options& o) {
  const MomentFile m = parse_moments(o.moments_a);
  Json out;
  if (m.exact) {
    const auto kappa = cumulants_from_moments(m.rational);
    Json arr = Json::array();
    for (const auto& v : kappa.values()) arr.push_back(to_string(v));
    out["cumulants"] = arr;
    out["round_trip_exact"] = moments_from_cumulants(kappa) == m.rational;
  } else {
    out["cumulants"] = cumulants_from_moments(m.real).values();
  }
  out["provenance"] = {{"version", RMPU_VERSION}, {"manifest_hash", invocation_hash(o)}, {"seed", o.seed}};
  Sink sink(o.out);
  sink.os() << out.dump(2) << '\n';
  return 0;
}

int otoc_exact(const Options& o) {
  std::vector<PredictionRow> rows;
  for (int k : o.k) {
    const MomentFile a = moments_or_default(o.moments_a, k);
    const MomentFile b = moments_or_default(o.moments_b, k);
    const double free = eval(a, b, [&](const auto& x, const auto& y) { return free_otoc_prediction(x, y, k); });
    rows.push_back({"otoc_free", k, 0, 0, 0, 0, 0, free, "leading", 0.0});
    if (o.dim > 0) {
      const double h = eval(a, b, [&](const auto& x, const auto& y) { return haar_otoc_exact(x, y, o.dim, k); });
      const double c = eval(a, b, [&](const auto& x, const auto& y) { return subleading_coeff_haar(x, y, k); });
      rows.push_back({"otoc_haar", k, 0, 0, 0, 0, o.dim, h, "exact", h - free});
      rows.push_back({"c_k", k, 0, 0, 0, 0, o.dim, c, "subleading", c / double(o.dim * o.dim)});
    }
    for (std::int64_t chi : chi_values(o)) {
      RmpuGeometry g{o.d, r_for_chi(chi, o.d), o.n, parse_variant(o.variant)};
      const double v = eval(a, b, [&](const auto& x, const auto& y) { return rmpu_otoc_exact(x, y, g, k); });
      const double ct =
          eval(a, b, [&](const auto& x, const auto& y) { return subleading_coeff_rmpu(x, y, o.n, o.d, k); });
      rows.push_back({"otoc_rmpu", k, o.d, g.r, o.n, chi, g.dim(), v, "exact", v - free});
      rows.push_back({"c_tilde", k, o.d, g.r, o.n, chi, g.dim(), ct, "subleading", ct / double(chi * chi)});
    }
  }
  Sink sink(o.out);
  sink.os() << provenance_header(invocation_hash(o), o.seed);
  write_prediction_csv(sink.os(), rows);
  return 0;
}

int otoc_mc(const Options& o) {
  const std::int64_t samples = o.samples > 0 ? o.samples : 1000;
  EnsembleConfig config;
  if (o.dim > 0) {
    const bool qubits = (o.dim & (o.dim - 1)) == 0 && o.dim > 1;
    config = EnsembleConfig::global_haar(o.dim, o.seed, samples, qubits ? 2 : static_cast<int>(o.dim));
  } else {
    config = EnsembleConfig::rmpu(RmpuGeometry{o.d, o.r, o.n, parse_variant(o.variant)}, o.seed, samples);
  }
  config.validate();
  // Projector-type observables span the whole system for global Haar and one site otherwise.
  const int span = o.dim > 0 ? config.sites() : 1;
  const ObservableSpec a = observable_from_flag(o.observable_a, 1, config.site_dim(), span, o.seed, 1ull << 40);
  ObservableSpec b = observable_from_flag(o.observable_b, 1, config.site_dim(), span, o.seed, (1ull << 40) + 1);
  b.first_site = config.sites() - b.num_sites + 1;
  std::vector<EstimateRecord> rows;
  for (int k : o.k) rows.push_back(mc_otoc(config, a, b, k));
  Sink sink(o.out);
  sink.os() << provenance_header(invocation_hash(o), o.seed);
  write_estimate_csv(sink.os(), rows);
  return 0;
}

int frame_potential(const Options& o) {
  std::vector<PredictionRow> rows;
  std::vector<EstimateRecord> estimates;
  for (int k : o.k) {
    const double haar = frame_potential_haar(k).convert_to<double>();
    rows.push_back({"frame_potential_haar", k, 0, 0, 0, 0, 0, haar, "exact", 0.0});
    for (std::int64_t chi : chi_values(o)) {
      RmpuGeometry g{o.d, r_for_chi(chi, o.d), o.n};
      const Rational ex = frame_potential_rmpu_exact<Rational>(g, k);
      const Rational as = frame_potential_rmpu_asymptotic<Rational>(g, k);
      rows.push_back({"frame_potential_rmpu", k, o.d, g.r, o.n, chi, g.dim(), to_double(ex), "exact", to_double(ex - as)});
      rows.push_back({"frame_potential_rmpu", k, o.d, g.r, o.n, chi, g.dim(), to_double(as), "subleading", 0.0});
      if (o.samples > 0) {
        EstimateRecord rec = mc_frame_potential(EnsembleConfig::rmpu(g, o.seed, o.samples), k);
        rec.quantity += "_chi" + std::to_string(chi);
        estimates.push_back(rec);
      }
    }
    if (o.samples > 0 && o.dim > 0) {
      EstimateRecord rec = mc_frame_potential(EnsembleConfig::global_haar(o.dim, o.seed, o.samples), k);
      rec.quantity += "_haar_D" + std::to_string(o.dim);
      estimates.push_back(rec);
    }
  }
  Sink sink(o.out);
  sink.os() << provenance_header(invocation_hash(o), o.seed);
  write_prediction_csv(sink.os(), rows);
  if (!estimates.empty()) write_estimate_csv(sink.os(), estimates);
  return 0;
}

int verify_identity(const Options& o) {
  const std::int64_t dim = o.dim > 0 ? o.dim : 4;
  bool ok = true;
  Json reports = Json::array();
  for (int k : o.k) {
    const IdentityReport r = verify_frame_otoc_identity(dim, k);
    ok = ok && r.passed;
    reports.push_back({{"D", r.dim}, {"k", r.k}, {"terms", r.terms}, {"lhs", r.lhs}, {"rhs", r.rhs},
                       {"relative_error", r.relative_error}, {"passed", r.passed}});
  }
  Json out = {{"reports", reports},
              {"provenance", {{"version", RMPU_VERSION}, {"manifest_hash", invocation_hash(o)}, {"seed", o.seed}}}};
  Sink sink(o.out);
  sink.os() << out.dump(2) << '\n';
  return ok ? 0 : 1;
}

namespace {

// Reference genus-one counts for k = 1..10.
constexpr std::uint64_t kGenusOneReference[] = {0, 1, 21, 270, 2860, 27300, 244188, 2089164, 17305200, 139864725};

int table2(std::ostream& os) {
  bool ok = true;
  os << "k,genus0_formula,genus0_computed,genus1_reference,genus1_computed,match\n";
  for (int k = 1; k <= 7; ++k) {
    const BigInt formula = fuss_catalan(k, 2);
    const std::uint64_t g0 = count_two_chains(k);
    const std::uint64_t g1 = count_genus_one_pairs(k);
    const bool match = formula == g0 && g1 == kGenusOneReference[k - 1];
    ok = ok && match;
    os << k << ',' << formula << ',' << g0 << ',' << kGenusOneReference[k - 1] << ',' << g1 << ','
       << (match ? "yes" : "no") << '\n';
  }
  return ok ? 0 : 1;
}

// Finite-trace observables with distinct spectra, d = 2, n = 2, k = 2.
int table1_row1(std::ostream& os) {
  const MomentSequence<Rational> a{Rational(1, 2), Rational(1, 2), Rational(1, 2)};
  const MomentSequence<Rational> b{Rational(1, 4), Rational(1, 4), Rational(1, 4)};
  const int k = 2, n = 2, d = 2;
  const Rational free = free_otoc_prediction(a, b, k);
  const Rational ct = subleading_coeff_rmpu(a, b, n, d, k);
  std::vector<double> chis, deltas;
  os << "chi,N,delta_computed,delta_formula,relative_deviation\n";
  for (int r = 1; r <= 4; ++r) {
    const RmpuGeometry g{d, r, n};
    const double chi = static_cast<double>(g.chi());
    const double delta = to_double(rmpu_otoc_exact(a, b, g, k) - free);
    const double formula = to_double(ct) / (chi * chi);
    chis.push_back(chi);
    deltas.push_back(delta);
    os << g.chi() << ',' << g.sites() << ',' << fmt(delta) << ',' << fmt(formula) << ','
       << fmt(std::abs(delta - formula) / std::abs(formula)) << '\n';
  }
  const PowerLawFit fit = fit_power_law(chis, deltas);
  os << "# fitted chi exponent " << fmt(fit.exponent) << " +- " << fmt(fit.exponent_stderr) << " (reference -2)\n";
  return std::abs(fit.exponent + 2.0) <= 0.3 ? 0 : 1;
}

int table1_row2(std::ostream& os) {
  const int k = 2, d = 2, n = 3;
  const RmpuGeometry g{d, 5, n};
  const double chi = static_cast<double>(g.chi());
  const double fk = frame_potential_haar(k).convert_to<double>();
  const double computed = to_double(frame_potential_rmpu_exact<Rational>(g, k)) / fk - 1.0;
  const double formula = k * (k - 1) / 2.0 * (n * (1.0 - 1.0 / (d * d)) - 1.0) / (chi * chi);
  const double dev = std::abs(computed - formula) / std::abs(formula);
  os << "k,d,n,chi,delta_formula,delta_computed,relative_deviation\n";
  os << k << ',' << d << ',' << n << ',' << g.chi() << ',' << fmt(formula) << ',' << fmt(computed) << ',' << fmt(dev)
     << '\n';
  return dev < 0.05 ? 0 : 1;
}

}  // namespace

int table_report(const Options& o) {
  Sink sink(o.out);
  sink.os() << provenance_header(invocation_hash(o), o.seed);
  if (o.table == "table2") return table2(sink.os());
  if (o.table == "table1_row1") return table1_row1(sink.os());
  if (o.table == "table1_row2") return table1_row2(sink.os());
  throw std::invalid_argument("unknown table '" + o.table + "'");
}

namespace {

MomentFile manifest_moments(const ExperimentManifest& m, const std::string& key, int k) {
  if (!m.moments.contains(key)) return moments_or_default("", k);
  const MomentFile f = moments_from_json(m.moments.at(key));
  if (f.real.order() < k) throw std::invalid_argument("manifest.moments." + key + ": fewer than k entries");
  return f;
}

bool wants(const ExperimentManifest& m, const std::string& check) {
  return m.checks.empty() || std::find(m.checks.begin(), m.checks.end(), check) != m.checks.end();
}

std::vector<Check> run_genus_counts(const ExperimentManifest& m, std::ostream& os) {
  std::vector<CountRow> rows;
  bool fuss = true, reference = true;
  for (std::int64_t k64 : m.axis("k")) {
    const int k = static_cast<int>(k64);
    const std::uint64_t g0 = count_two_chains(k);
    rows.push_back({k, 2, "genus0_pairs", g0, 0.0});
    fuss = fuss && BigInt(g0) == fuss_catalan(k, 2);
    if (k <= kEnumerationCap) {
      const std::uint64_t g1 = count_genus_one_pairs(k);
      rows.push_back({k, 2, "genus1_pairs", g1, 0.0});
      reference = reference && (k > 10 || g1 == kGenusOneReference[k - 1]);
    }
  }
  std::sort(rows.begin(), rows.end(), [](const CountRow& x, const CountRow& y) {
    return std::tie(x.k, x.family) < std::tie(y.k, y.family);
  });
  write_count_csv(os, rows, false);
  std::vector<Check> checks;
  if (wants(m, "fuss_catalan")) checks.push_back({"fuss_catalan", fuss, "genus-0 count equals (2k+1)^-1 binom(3k,k)"});
  if (wants(m, "genus_one_reference")) checks.push_back({"genus_one_reference", reference, "genus-1 counts match reference"});
  return checks;
}

std::vector<Check> run_frame_potential(const ExperimentManifest& m, std::ostream& os) {
  std::vector<PredictionRow> rows;
  bool factorial = true;
  for (std::int64_t k64 : m.axis("k")) {
    for (std::int64_t d : m.axis("d")) {
      for (std::int64_t n : m.axis("n")) {
        for (std::int64_t chi : m.axis("chi")) {
          const int k = static_cast<int>(k64);
          RmpuGeometry g{static_cast<int>(d), r_for_chi(chi, static_cast<int>(d)), static_cast<int>(n)};
          const Rational ex = frame_potential_rmpu_exact<Rational>(g, k);
          const Rational as = frame_potential_rmpu_asymptotic<Rational>(g, k);
          if (n == 1) factorial = factorial && ex == Rational(frame_potential_haar(k));
          rows.push_back({"frame_potential_rmpu", k, g.d, g.r, g.n, chi, g.dim(), to_double(ex), "exact",
                          to_double(ex - as)});
        }
      }
    }
  }
  write_prediction_csv(os, rows);
  std::vector<Check> checks;
  if (wants(m, "haar_at_n1")) checks.push_back({"haar_at_n1", factorial, "n = 1 rows equal k!"});
  return checks;
}

std::vector<Check> run_otoc(const ExperimentManifest& m, std::ostream& os, bool haar) {
  std::vector<Check> checks;
  os << "quantity,k,d,r,n,chi,D,value,free_prediction,delta,subleading_coeff,fitted_exponent,fitted_exponent_stderr\n";
  os.precision(17);
  for (std::int64_t k64 : m.axis("k")) {
    const int k = static_cast<int>(k64);
    const MomentFile a = manifest_moments(m, "A", k);
    const MomentFile b = manifest_moments(m, "B", k);
    const double free = eval(a, b, [&](const auto& x, const auto& y) { return free_otoc_prediction(x, y, k); });
    struct Row {
      int d, r, n;
      std::int64_t chi, dim;
      double value, coeff;
    };
    std::vector<std::vector<Row>> groups;
    if (haar) {
      const double c = eval(a, b, [&](const auto& x, const auto& y) { return subleading_coeff_haar(x, y, k); });
      std::vector<Row> group;
      for (std::int64_t dim : m.axis("D")) {
        group.push_back({0, 0, 0, 0, dim, eval(a, b, [&](const auto& x, const auto& y) { return haar_otoc_exact(x, y, dim, k); }), c});
      }
      groups.push_back(group);
    } else {
      for (std::int64_t d : m.axis("d")) {
        for (std::int64_t n : m.axis("n")) {
          const double ct = eval(a, b, [&](const auto& x, const auto& y) {
            return subleading_coeff_rmpu(x, y, static_cast<int>(n), static_cast<int>(d), k);
          });
          std::vector<Row> group;
          for (std::int64_t chi : m.axis("chi")) {
            const RmpuGeometry g{static_cast<int>(d), r_for_chi(chi, static_cast<int>(d)), static_cast<int>(n)};
            group.push_back({g.d, g.r, g.n, chi, g.dim(),
                             eval(a, b, [&](const auto& x, const auto& y) { return rmpu_otoc_exact(x, y, g, k); }), ct});
          }
          groups.push_back(group);
        }
      }
    }
    for (const auto& group : groups) {
      std::vector<double> xs, ys;
      for (const auto& row : group) {
        xs.push_back(static_cast<double>(haar ? row.dim : row.chi));
        ys.push_back(row.value - free);
      }
      PowerLawFit fit;
      const bool fittable = xs.size() >= 3 && std::none_of(ys.begin(), ys.end(), [](double y) { return y == 0.0; });
      if (fittable) fit = fit_power_law(xs, ys);
      for (const auto& row : group) {
        os << (haar ? "otoc_haar" : "otoc_rmpu") << ',' << k << ',' << row.d << ',' << row.r << ',' << row.n << ','
           << row.chi << ',' << row.dim << ',' << row.value << ',' << free << ',' << row.value - free << ','
           << row.coeff << ',';
        if (fittable) {
          os << fit.exponent << ',' << fit.exponent_stderr << '\n';
        } else {
          os << "nan,nan\n";
        }
      }
      const std::string label = "k" + std::to_string(k) + (haar ? "" : "_d" + std::to_string(group[0].d) + "_n" + std::to_string(group[0].n));
      if (wants(m, "exponent")) {
        checks.push_back({"exponent_" + label, fittable && std::abs(fit.exponent + 2.0) <= 0.3,
                          "fitted exponent " + fmt(fit.exponent) + " vs -2 +- 0.3"});
      }
    }
  }
  return checks;
}

std::vector<Check> run_cumulants(const ExperimentManifest& m, std::ostream& os) {
  const MomentFile a = moments_from_json(m.moments.at("A"));
  std::vector<Check> checks;
  os << "j,moment,cumulant\n";
  if (a.exact) {
    const auto kappa = cumulants_from_moments(a.rational);
    for (int j = 1; j <= kappa.order(); ++j) os << j << ',' << to_string(a.rational[j]) << ',' << to_string(kappa[j]) << '\n';
    if (wants(m, "round_trip")) {
      checks.push_back({"round_trip", moments_from_cumulants(kappa) == a.rational, "exact moment-cumulant round trip"});
    }
  } else {
    const auto kappa = cumulants_from_moments(a.real);
    os.precision(17);
    for (int j = 1; j <= kappa.order(); ++j) os << j << ',' << a.real[j] << ',' << kappa[j] << '\n';
  }
  return checks;
}

std::vector<Check> run_identity_checks(const ExperimentManifest& m, std::ostream& os) {
  std::vector<Check> checks;
  os << "D,k,terms,lhs,rhs,relative_error,passed\n";
  os.precision(17);
  for (std::int64_t dim : m.axis("D")) {
    for (std::int64_t k : m.axis("k")) {
      const IdentityReport r = verify_frame_otoc_identity(dim, static_cast<int>(k));
      os << r.dim << ',' << r.k << ',' << r.terms << ',' << r.lhs << ',' << r.rhs << ',' << r.relative_error << ','
         << (r.passed ? "yes" : "no") << '\n';
      checks.push_back({"identity_D" + std::to_string(dim) + "_k" + std::to_string(k), r.passed,
                        "relative error " + fmt(r.relative_error)});
    }
  }
  return checks;
}

}  // namespace

int run_manifest(const Options& o) {
  const ExperimentManifest m = read_manifest(o.manifest);
  const std::filesystem::path dir = o.out.empty() ? std::filesystem::path(m.out) : std::filesystem::path(o.out);
  std::filesystem::create_directories(dir);
  std::ostringstream csv;
  csv << provenance_header(m.hash, m.seed);
  std::vector<Check> checks;
  if (m.quantity == "genus_counts") {
    checks = run_genus_counts(m, csv);
  } else if (m.quantity == "frame_potential") {
    checks = run_frame_potential(m, csv);
  } else if (m.quantity == "otoc_rmpu") {
    checks = run_otoc(m, csv, false);
  } else if (m.quantity == "otoc_haar") {
    checks = run_otoc(m, csv, true);
  } else if (m.quantity == "cumulants") {
    checks = run_cumulants(m, csv);
  } else {
    checks = run_identity_checks(m, csv);
  }
  std::ofstream(dir / (m.quantity + ".csv")) << csv.str();
  const Json summary = summary_json(m, checks);
  std::ofstream(dir / (m.quantity + "_summary.json")) << summary.dump(2) << '\n';
  std::cout << summary.dump() << '\n';
  return summary["all_passed"].get<bool>() ? 0 : 1;
}

}  // namespace rmpu::cli
