#include "rmpu/symgroup.hpp"

#include "rmpu/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <ostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace rmpu {

namespace {

void require_degree(int k) {
  if (k < 1 || k > Permutation::kMaxDegree) {
    throw std::invalid_argument("permutation degree must lie in [1, " +
                                std::to_string(Permutation::kMaxDegree) + "], got " +
                                std::to_string(k));
  }
}

void require_same_degree(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) {
    throw std::invalid_argument("incompatible replica counts: S_" + std::to_string(a.degree()) +
                                " vs S_" + std::to_string(b.degree()));
  }
}

}  // namespace

Permutation::Permutation(std::span<const int> images) {
  const int k = static_cast<int>(images.size());
  require_degree(k);
  std::array<bool, kMaxDegree> seen{};
  for (int i = 0; i < k; ++i) {
    const int v = images[static_cast<std::size_t>(i)];
    if (v < 0 || v >= k || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("image word is not a bijection on {0..k-1}");
    }
    seen[static_cast<std::size_t>(v)] = true;
    images_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
  }
  degree_ = k;
}

Permutation Permutation::identity(int k) {
  require_degree(k);
  Permutation p;
  p.degree_ = k;
  for (int i = 0; i < k; ++i) p.images_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  return p;
}

Permutation Permutation::canonical_cycle(int k) {
  require_degree(k);
  Permutation p;
  p.degree_ = k;
  for (int i = 0; i < k; ++i) {
    p.images_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((i + 1) % k);
  }
  return p;
}

Permutation Permutation::from_one_based(std::span<const int> images) {
  std::vector<int> shifted(images.begin(), images.end());
  for (int& v : shifted) --v;
  return Permutation(shifted);
}

Permutation Permutation::inverse() const {
  Permutation q;
  q.degree_ = degree_;
  for (int i = 0; i < degree_; ++i) {
    q.images_[images_[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
  }
  return q;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree_; ++i) {
    if (images_[static_cast<std::size_t>(i)] != i) return false;
  }
  return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> result;
  std::array<bool, kMaxDegree> seen{};
  for (int start = 0; start < degree_; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> cycle;
    for (int i = start; !seen[static_cast<std::size_t>(i)]; i = (*this)(i)) {
      seen[static_cast<std::size_t>(i)] = true;
      cycle.push_back(i);
    }
    result.push_back(std::move(cycle));
  }
  return result;
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<int> lengths;
  for (const auto& c : cycles()) lengths.push_back(static_cast<int>(c.size()));
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return lengths;
}

std::vector<int> Permutation::images() const {
  return {images_.begin(), images_.begin() + degree_};
}

Permutation compose(const Permutation& a, const Permutation& b) {
  require_same_degree(a, b);
  std::vector<int> images(static_cast<std::size_t>(a.degree()));
  for (int i = 0; i < a.degree(); ++i) images[static_cast<std::size_t>(i)] = a(b(i));
  return Permutation(images);
}

int num_cycles(const Permutation& p) {
  std::array<bool, Permutation::kMaxDegree> seen{};
  int count = 0;
  for (int start = 0; start < p.degree(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    ++count;
    for (int i = start; !seen[static_cast<std::size_t>(i)]; i = p(i)) {
      seen[static_cast<std::size_t>(i)] = true;
    }
  }
  return count;
}

int cayley_distance(const Permutation& a, const Permutation& b) {
  require_same_degree(a, b);
  // #(a^{-1} b) counted without materializing the product.
  const int k = a.degree();
  std::array<int, Permutation::kMaxDegree> a_inv{};
  for (int i = 0; i < k; ++i) a_inv[static_cast<std::size_t>(a(i))] = i;
  std::array<bool, Permutation::kMaxDegree> seen{};
  int cycles = 0;
  for (int start = 0; start < k; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    ++cycles;
    for (int i = start; !seen[static_cast<std::size_t>(i)]; i = a_inv[static_cast<std::size_t>(b(i))]) {
      seen[static_cast<std::size_t>(i)] = true;
    }
  }
  return k - cycles;
}

int length(const Permutation& p) { return p.degree() - num_cycles(p); }

int adjacency_indicator(const Permutation& a, const Permutation& b, int alpha) {
  return cayley_distance(a, b) == alpha ? 1 : 0;
}

std::uint64_t factorial(int k) {
  if (k < 0 || k > 20) throw std::invalid_argument("factorial argument out of range");
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

void for_each_permutation(int k, const std::function<void(const Permutation&)>& visit) {
  require_degree(k);
  if (k > kCountingCap) {
    throw ResourceError("S_" + std::to_string(k) + " exceeds the counting cap k <= " +
                        std::to_string(kCountingCap));
  }
  std::vector<int> word(static_cast<std::size_t>(k));
  std::iota(word.begin(), word.end(), 0);
  do {
    visit(Permutation(word));
  } while (std::next_permutation(word.begin(), word.end()));
}

std::vector<Permutation> enumerate(int k) {
  require_degree(k);
  if (k > kEnumerationCap) {
    throw ResourceError("enumerating S_" + std::to_string(k) + " exceeds the cap k <= " +
                        std::to_string(kEnumerationCap));
  }
  std::vector<Permutation> all;
  all.reserve(factorial(k));
  for_each_permutation(k, [&](const Permutation& p) { all.push_back(p); });
  return all;
}

std::uint64_t rank(const Permutation& p) {
  const int k = p.degree();
  std::uint64_t r = 0;
  for (int i = 0; i < k; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < k; ++j) {
      if (p(j) < p(i)) ++smaller;
    }
    r += static_cast<std::uint64_t>(smaller) * factorial(k - 1 - i);
  }
  return r;
}

Permutation unrank(std::uint64_t index, int k) {
  require_degree(k);
  if (index >= factorial(k)) throw std::invalid_argument("rank out of range for S_k");
  std::vector<int> pool(static_cast<std::size_t>(k));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> word;
  for (int i = k - 1; i >= 0; --i) {
    const std::uint64_t f = factorial(i);
    const auto pick = static_cast<std::size_t>(index / f);
    index %= f;
    word.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return Permutation(word);
}

Permutation parse_cycles(std::string_view text, int k) {
  require_degree(k);
  std::vector<int> images(static_cast<std::size_t>(k));
  std::iota(images.begin(), images.end(), 0);
  std::vector<bool> used(static_cast<std::size_t>(k), false);

  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("malformed cycle notation '" + std::string(text) + "': " + why);
  };

  std::string trimmed;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
  }
  if (trimmed.empty() || trimmed == "e" || trimmed == "()") return Permutation::identity(k);

  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    if (c != '(') fail("expected '('");
    const std::size_t close = text.find(')', pos);
    if (close == std::string_view::npos) fail("unbalanced parenthesis");
    const std::string_view body = text.substr(pos + 1, close - pos - 1);
    pos = close + 1;

    // Separated labels ("1 2", "1,10") or compact single digits ("123").
    std::vector<int> labels;
    const bool separated = body.find_first_of(" ,") != std::string_view::npos;
    if (separated) {
      std::string token;
      std::string normalized(body);
      std::replace(normalized.begin(), normalized.end(), ',', ' ');
      std::istringstream tokens(normalized);
      while (tokens >> token) {
        if (!std::all_of(token.begin(), token.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
          fail("non-numeric label");
        }
        labels.push_back(std::stoi(token));
      }
    } else {
      for (char ch : body) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) fail("non-numeric label");
        labels.push_back(ch - '0');
      }
    }
    if (labels.empty()) continue;
    for (int label : labels) {
      if (label < 1 || label > k) fail("label outside 1.." + std::to_string(k));
      if (used[static_cast<std::size_t>(label - 1)]) fail("label repeated");
      used[static_cast<std::size_t>(label - 1)] = true;
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
      images[static_cast<std::size_t>(labels[i] - 1)] = labels[(i + 1) % labels.size()] - 1;
    }
  }
  return Permutation(images);
}

std::string to_cycle_string(const Permutation& p) {
  std::string out;
  const bool wide = p.degree() > 9;
  for (const auto& cycle : p.cycles()) {
    out.push_back('(');
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (wide && i > 0) out.push_back(',');
      out += std::to_string(cycle[i] + 1);
    }
    out.push_back(')');
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << to_cycle_string(p); }

std::uint64_t cycle_type_key(const Permutation& p) {
  std::array<bool, Permutation::kMaxDegree> seen{};
  std::uint64_t key = 0;
  for (int start = 0; start < p.degree(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    int len = 0;
    for (int i = start; !seen[static_cast<std::size_t>(i)]; i = p(i)) {
      seen[static_cast<std::size_t>(i)] = true;
      ++len;
    }
    key += std::uint64_t{1} << (4 * (len - 1));
  }
  return key;
}

namespace {

void partitions_into(int remaining, int max_part, std::vector<int>& prefix,
                     std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(prefix);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    prefix.push_back(part);
    partitions_into(remaining - part, part, prefix, out);
    prefix.pop_back();
  }
}

std::uint64_t key_of_type(const std::vector<int>& type) {
  std::uint64_t key = 0;
  for (int len : type) key += std::uint64_t{1} << (4 * (len - 1));
  return key;
}

}  // namespace

std::vector<std::vector<int>> integer_partitions(int k) {
  require_degree(k);
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  partitions_into(k, k, prefix, out);
  return out;
}

Permutation class_representative(const std::vector<int>& cycle_type) {
  std::vector<int> images;
  int offset = 0;
  for (int len : cycle_type) {
    if (len < 1) throw std::invalid_argument("cycle lengths must be positive");
    for (int i = 0; i < len; ++i) images.push_back(offset + (i + 1) % len);
    offset += len;
  }
  return Permutation(images);
}

ClassIndex::ClassIndex(int k) : k_(k), types_(integer_partitions(k)) {
  for (std::size_t c = 0; c < types_.size(); ++c) {
    const auto& type = types_[c];
    reps_.push_back(class_representative(type));
    std::uint64_t denom = 1;
    std::array<int, Permutation::kMaxDegree + 1> mult{};
    for (int len : type) {
      denom *= static_cast<std::uint64_t>(len);
      ++mult[static_cast<std::size_t>(len)];
    }
    for (int m : mult) denom *= factorial(m);
    sizes_.push_back(factorial(k) / denom);
    keys_.emplace_back(key_of_type(type), static_cast<int>(c));
  }
  std::sort(keys_.begin(), keys_.end());
}

int ClassIndex::of(const Permutation& p) const {
  if (p.degree() != k_) throw std::invalid_argument("class lookup with mismatched degree");
  const std::uint64_t key = cycle_type_key(p);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), std::make_pair(key, 0));
  return it->second;
}

const ClassIndex& class_index(int k) {
  require_degree(k);
  static std::mutex mutex;
  static std::array<std::unique_ptr<ClassIndex>, Permutation::kMaxDegree + 1> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[static_cast<std::size_t>(k)];
  if (!slot) slot = std::make_unique<ClassIndex>(k);
  return *slot;
}

GroupTable::GroupTable(int k) : k_(k), classes_(&class_index(k)) {
  if (k > kPairTableCap) {
    throw ResourceError("pair table for S_" + std::to_string(k) + " exceeds the cap k <= " +
                        std::to_string(kPairTableCap));
  }
  elements_ = enumerate(k);
  const std::size_t n = elements_.size();
  std::vector<Permutation> inverses;
  inverses.reserve(n);
  for (const auto& p : elements_) {
    element_class_.push_back(classes_->of(p));
    inverses.push_back(p.inverse());
  }
  pair_class_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      pair_class_[i * n + j] = static_cast<std::uint8_t>(classes_->of(inverses[i] * elements_[j]));
    }
  }
  const Permutation gamma = Permutation::canonical_cycle(k);
  for (std::size_t i = 0; i < n; ++i) kreweras_.push_back(index_of(inverses[i] * gamma));
}

const GroupTable& group_table(int k) {
  require_degree(k);
  static std::mutex mutex;
  static std::array<std::unique_ptr<GroupTable>, Permutation::kMaxDegree + 1> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[static_cast<std::size_t>(k)];
  if (!slot) slot = std::make_unique<GroupTable>(k);
  return *slot;
}

}  // namespace rmpu

std::size_t std::hash<rmpu::Permutation>::operator()(const rmpu::Permutation& p) const noexcept {
  return static_cast<std::size_t>(rmpu::rank(p)) * 31u + static_cast<std::size_t>(p.degree());
}
