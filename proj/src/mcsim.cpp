#include "rmpu/mcsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <ostream>
#include <thread>

namespace rmpu {

namespace {

std::int64_t int_pow(std::int64_t b, int e) {
  std::int64_t v = 1;
  for (int i = 0; i < e; ++i) v *= b;
  return v;
}

// Evaluates f(i) for i in [0, count) on all hardware threads; results land in index order.
std::vector<double> parallel_map(std::int64_t count, const std::function<double(std::int64_t)>& f) {
  std::vector<double> out(static_cast<std::size_t>(count));
  const auto workers = static_cast<std::int64_t>(std::max(1u, std::thread::hardware_concurrency()));
  if (workers == 1 || count < 64) {
    for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = f(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (std::int64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::int64_t i = w; i < count; i += workers) out[static_cast<std::size_t>(i)] = f(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// Neumaier compensated sum; naive accumulation of 1e4+ samples drifts well past the sample stderr.
double compensated_sum(const std::vector<double>& values) {
  double sum = 0.0, carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + carry;
}

EstimateRecord summarize(const std::string& quantity, const std::vector<double>& values, std::uint64_t seed) {
  EstimateRecord rec;
  rec.quantity = quantity;
  rec.samples = static_cast<std::int64_t>(values.size());
  rec.seed = seed;
  rec.mean = compensated_sum(values) / static_cast<double>(values.size());
  std::vector<double> sq;
  sq.reserve(values.size());
  for (double v : values) sq.push_back((v - rec.mean) * (v - rec.mean));
  const double ss = compensated_sum(sq);
  const double var = ss / static_cast<double>(values.size() - 1);
  rec.stderr_ = std::sqrt(var / static_cast<double>(values.size()));
  // zero-variance estimators are still limited by per-sample rounding
  std::vector<double> mag;
  mag.reserve(values.size());
  for (double v : values) mag.push_back(std::abs(v));
  const double resolution = 64.0 * std::numeric_limits<double>::epsilon() * compensated_sum(mag) /
                            static_cast<double>(values.size());
  rec.stderr_ = std::max(rec.stderr_, resolution);
  return rec;
}

}  // namespace

EnsembleConfig EnsembleConfig::global_haar(std::int64_t dim, std::uint64_t seed, std::int64_t samples, int site_dim) {
  EnsembleConfig c;
  c.kind = Kind::global_haar;
  c.global_dim = dim;
  c.global_site_dim = site_dim > 0 ? site_dim : static_cast<int>(dim);
  c.seed = seed;
  c.samples = samples;
  return c;
}

EnsembleConfig EnsembleConfig::rmpu(const RmpuGeometry& geometry, std::uint64_t seed, std::int64_t samples) {
  EnsembleConfig c;
  c.kind = Kind::rmpu;
  c.geometry = geometry;
  c.seed = seed;
  c.samples = samples;
  return c;
}

std::int64_t EnsembleConfig::dim() const { return kind == Kind::global_haar ? global_dim : geometry.dim(); }

int EnsembleConfig::site_dim() const { return kind == Kind::global_haar ? global_site_dim : geometry.d; }

int EnsembleConfig::sites() const {
  if (kind == Kind::rmpu) return geometry.sites();
  int s = 0;
  for (std::int64_t v = 1; v < global_dim; v *= global_site_dim) ++s;
  return std::max(s, 1);
}

void EnsembleConfig::validate() const {
  if (kind == Kind::rmpu) {
    geometry.validate();
  } else {
    if (global_dim < 1) throw std::invalid_argument("global Haar dimension must be positive");
    if (global_site_dim < 2 && global_dim > 1) throw std::invalid_argument("site dimension must be at least 2");
    if (int_pow(global_site_dim, sites()) != global_dim) {
      throw std::invalid_argument("global dimension is not a power of the site dimension");
    }
  }
  if (dim() > kDenseSimCap) {
    throw ResourceError("dimension " + std::to_string(dim()) + " exceeds the dense cap " + std::to_string(kDenseSimCap));
  }
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
}

void ObservableSpec::validate() const {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) throw std::invalid_argument("observable must be square");
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("observable is not Hermitian");
  }
  if (traceless && std::abs(matrix.trace()) > 1e-12) throw std::invalid_argument("observable flagged traceless has a trace");
  const double norm = Eigen::SelfAdjointEigenSolver<MatrixXc>(matrix, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
  if (norm > norm_bound + 1e-12) throw std::invalid_argument("observable exceeds its operator-norm bound");
  if (first_site < 1 || num_sites < 1) throw std::invalid_argument("invalid observable support");
}

MatrixXc sample_haar_unitary(std::int64_t dim, RngStream& rng) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  MatrixXc z(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) z(i, j) = rng.complex_normal();
  }
  const Eigen::HouseholderQR<MatrixXc> qr(z);
  MatrixXc q = qr.householderQ();
  const MatrixXc& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex rjj = r(j, j);
    q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

MatrixXc embed_operator(const MatrixXc& m, int first_site, int site_dim, int sites) {
  int span = 0;
  for (std::int64_t v = 1; v < m.rows(); v *= site_dim) ++span;
  if (int_pow(site_dim, span) != m.rows() || m.rows() != m.cols()) {
    throw std::invalid_argument("operator size is not a power of the site dimension");
  }
  if (first_site < 1 || first_site + span - 1 > sites) throw std::invalid_argument("operator support outside the system");
  const std::int64_t left = int_pow(site_dim, first_site - 1);
  const std::int64_t right = int_pow(site_dim, sites - first_site - span + 1);
  const std::int64_t local = m.rows();
  MatrixXc out = MatrixXc::Zero(left * local * right, left * local * right);
  for (std::int64_t l = 0; l < left; ++l) {
    for (std::int64_t a = 0; a < local; ++a) {
      for (std::int64_t b = 0; b < local; ++b) {
        const Complex v = m(a, b);
        if (v == Complex(0.0)) continue;
        for (std::int64_t r = 0; r < right; ++r) out((l * local + a) * right + r, (l * local + b) * right + r) = v;
      }
    }
  }
  return out;
}

MatrixXc embed_observable(const ObservableSpec& spec, const EnsembleConfig& config) {
  spec.validate();
  return embed_operator(spec.matrix, spec.first_site, config.site_dim(), config.sites());
}

MatrixXc build_rmpu(const EnsembleConfig& config, RngStream& rng) {
  config.validate();
  if (config.kind == EnsembleConfig::Kind::global_haar) return sample_haar_unitary(config.global_dim, rng);
  const RmpuGeometry& g = config.geometry;
  const int sites = g.sites();
  const std::int64_t q = g.gate_dim();
  auto gate = [&](int i) { return embed_operator(sample_haar_unitary(q, rng), i, g.d, sites); };
  MatrixXc u = MatrixXc::Identity(g.dim(), g.dim());
  if (config.orientation == EnsembleConfig::Orientation::ascending) {
    for (int i = 1; i <= g.n; ++i) u = u * gate(i);
  } else {
    for (int i = g.n; i >= 1; --i) u = u * gate(i);
  }
  if (g.variant == RmpuGeometry::Variant::two_floor) {
    if (config.orientation == EnsembleConfig::Orientation::ascending) {
      for (int i = g.n - 1; i >= 1; --i) u = u * gate(i);
    } else {
      for (int i = 1; i <= g.n - 1; ++i) u = u * gate(i);
    }
  }
  return u;
}

EstimateRecord mc_otoc(const EnsembleConfig& config, const ObservableSpec& a, const ObservableSpec& b, int k) {
  config.validate();
  if (k < 1) throw std::invalid_argument("k must be positive");
  const MatrixXc ea = embed_observable(a, config);
  const MatrixXc eb = embed_observable(b, config);
  const auto dim = static_cast<double>(config.dim());
  const std::vector<double> values = parallel_map(config.samples, [&](std::int64_t i) {
    RngStream rng(config.seed, static_cast<std::uint64_t>(i));
    const MatrixXc u = build_rmpu(config, rng);
    const MatrixXc p = u.adjoint() * ea * u * eb;
    MatrixXc power = p;
    for (int j = 1; j < k; ++j) power = power * p;
    const Complex t = power.trace() / dim;
    if (std::abs(t.imag()) > 1e-10 * std::max(1.0, std::abs(t.real()))) {
      throw std::runtime_error("OTOC sample has a non-negligible imaginary part");
    }
    return t.real();
  });
  return summarize("otoc_k" + std::to_string(k), values, config.seed);
}

EstimateRecord mc_frame_potential(const EnsembleConfig& config, int k) {
  config.validate();
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (config.samples < 100) throw std::invalid_argument("frame potential needs at least 100 pairs");
  const std::vector<double> values = parallel_map(config.samples, [&](std::int64_t i) {
    RngStream ru(config.seed, static_cast<std::uint64_t>(2 * i));
    RngStream rv(config.seed, static_cast<std::uint64_t>(2 * i + 1));
    const MatrixXc u = build_rmpu(config, ru);
    const MatrixXc v = build_rmpu(config, rv);
    const double t2 = std::norm((u * v.adjoint()).trace());
    return std::pow(t2, k);
  });
  EstimateRecord rec = summarize("frame_potential_k" + std::to_string(k), values, config.seed);
  const double rel = rec.stderr_ / std::abs(rec.mean);
  if (rel > 0.1) {
    const double needed = static_cast<double>(rec.samples) * (rel / 0.1) * (rel / 0.1);
    rec.guidance = "relative stderr " + std::to_string(rel) + " > 0.1; about " +
                   std::to_string(static_cast<std::int64_t>(std::ceil(needed))) + " pairs needed";
  }
  return rec;
}

OperatorEntanglement operator_entanglement(const MatrixXc& u, int site_dim, int sites, int left_sites) {
  if (left_sites < 1 || left_sites >= sites) throw std::invalid_argument("cut must leave sites on both sides");
  const std::int64_t dl = int_pow(site_dim, left_sites);
  const std::int64_t dr = int_pow(site_dim, sites - left_sites);
  if (u.rows() != dl * dr || u.cols() != dl * dr) throw std::invalid_argument("matrix does not match the site layout");
  // U[(l r),(l' r')] -> M[(l l'),(r r')]
  MatrixXc m(dl * dl, dr * dr);
  for (std::int64_t l = 0; l < dl; ++l) {
    for (std::int64_t r = 0; r < dr; ++r) {
      for (std::int64_t lp = 0; lp < dl; ++lp) {
        for (std::int64_t rp = 0; rp < dr; ++rp) m(l * dl + lp, r * dr + rp) = u(l * dr + r, lp * dr + rp);
      }
    }
  }
  const Eigen::VectorXd s = Eigen::JacobiSVD<MatrixXc>(m).singularValues();
  const double total = s.squaredNorm();
  OperatorEntanglement out;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double p = s(i) * s(i) / total;
    if (s(i) > 1e-10 * s(0)) ++out.schmidt_rank;
    if (p > 0.0) out.entropy -= p * std::log(p);
  }
  return out;
}

ObservableKind parse_observable_kind(const std::string& text) {
  if (text == "pauli_string") return ObservableKind::pauli_string;
  if (text == "random_hermitian") return ObservableKind::random_hermitian;
  if (text == "projector") return ObservableKind::projector;
  if (text == "shifted_projector") return ObservableKind::shifted_projector;
  throw std::invalid_argument("unknown observable kind '" + text + "'");
}

ObservableSpec make_observable(ObservableKind kind, const ObservableParams& params, int first_site, int num_sites,
                               int site_dim) {
  if (num_sites < 1 || first_site < 1 || site_dim < 2) throw std::invalid_argument("invalid observable support");
  const std::int64_t dim = int_pow(site_dim, num_sites);
  ObservableSpec spec;
  spec.first_site = first_site;
  spec.num_sites = num_sites;
  switch (kind) {
    case ObservableKind::pauli_string: {
      if (site_dim != 2) throw std::invalid_argument("Pauli strings need qubit sites");
      if (static_cast<int>(params.pauli.size()) != num_sites) {
        throw std::invalid_argument("Pauli string length must equal the number of sites");
      }
      const Complex i(0.0, 1.0);
      MatrixXc p = MatrixXc::Ones(1, 1);
      bool identity = true;
      for (char c : params.pauli) {
        Eigen::Matrix2cd s;
        switch (c) {
          case 'I': s << 1, 0, 0, 1; break;
          case 'X': s << 0, 1, 1, 0; break;
          case 'Y': s << 0, -i, i, 0; break;
          case 'Z': s << 1, 0, 0, -1; break;
          default: throw std::invalid_argument(std::string("unknown Pauli letter '") + c + "'");
        }
        identity = identity && c == 'I';
        MatrixXc next(p.rows() * 2, p.cols() * 2);
        for (Eigen::Index r = 0; r < p.rows(); ++r) {
          for (Eigen::Index col = 0; col < p.cols(); ++col) next.block(2 * r, 2 * col, 2, 2) = p(r, col) * s;
        }
        p = std::move(next);
      }
      spec.matrix = std::move(p);
      spec.traceless = !identity;
      break;
    }
    case ObservableKind::random_hermitian: {
      RngStream rng(params.seed, params.stream);
      MatrixXc g(dim, dim);
      for (Eigen::Index c = 0; c < dim; ++c) {
        for (Eigen::Index r = 0; r < dim; ++r) g(r, c) = rng.complex_normal();
      }
      MatrixXc h = (g + g.adjoint()) / 2.0;
      const double norm =
          Eigen::SelfAdjointEigenSolver<MatrixXc>(h, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
      h /= norm;
      spec.matrix = (h + h.adjoint()) / 2.0;
      break;
    }
    case ObservableKind::projector:
    case ObservableKind::shifted_projector: {
      if (params.rank < 0 || params.rank > dim) throw std::invalid_argument("projector rank out of range");
      MatrixXc p = MatrixXc::Zero(dim, dim);
      for (std::int64_t j = 0; j < params.rank; ++j) p(j, j) = 1.0;
      if (kind == ObservableKind::shifted_projector) {
        p -= 0.5 * MatrixXc::Identity(dim, dim);
        spec.traceless = 2 * params.rank == dim;
      }
      spec.matrix = std::move(p);
      break;
    }
  }
  spec.validate();
  return spec;
}

void write_estimate_csv(std::ostream& os, const std::vector<EstimateRecord>& rows) {
  os << "quantity,mean,stderr,samples,seed,guidance\n";
  os.precision(17);
  for (const auto& r : rows) {
    os << r.quantity << ',' << r.mean << ',' << r.stderr_ << ',' << r.samples << ',' << r.seed << ",\"" << r.guidance
       << "\"\n";
  }
}

}  // namespace rmpu
