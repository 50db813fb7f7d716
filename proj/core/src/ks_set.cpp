#include "ptlab/ks_set.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <gmpxx.h>

#include "ptlab/errors.hpp"

namespace ptlab::ks {

namespace {

std::int64_t dot(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += mpz_class(static_cast<long>(a[i])) * static_cast<long>(b[i]);
  if (!s.fits_slong_p()) throw InputError("vector components too large");
  return s.get_si();
}

}  // namespace

KSSet::KSSet(std::string name, int dimension, std::vector<std::vector<std::int64_t>> vectors,
             std::vector<std::vector<int>> contexts)
    : name_(std::move(name)),
      dim_(dimension),
      vectors_(std::move(vectors)),
      contexts_(std::move(contexts)) {
  if (dim_ < 2) throw InputError("KS set dimension must be at least 2");
  for (const auto& v : vectors_) {
    if (v.size() != static_cast<std::size_t>(dim_))
      throw InputError("vector length differs from the dimension");
    if (std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; }))
      throw InputError("zero vector in KS set");
    const double n = std::sqrt(static_cast<double>(dot(v, v)));
    std::vector<double> u(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) u[i] = static_cast<double>(v[i]) / n;
    units_.push_back(std::move(u));
  }
  std::vector<bool> covered(vectors_.size(), false);
  for (const auto& c : contexts_) {
    if (c.size() < 2 || c.size() > static_cast<std::size_t>(dim_))
      throw InputError("context sizes must lie between 2 and the dimension");
    for (std::size_t a = 0; a < c.size(); ++a) {
      if (c[a] < 0 || static_cast<std::size_t>(c[a]) >= vectors_.size())
        throw InputError("context refers to a missing vector");
      covered[static_cast<std::size_t>(c[a])] = true;
      for (std::size_t b = a + 1; b < c.size(); ++b) {
        if (c[a] == c[b]) throw InputError("context repeats a vector");
        if (!orthogonal(static_cast<std::size_t>(c[a]), static_cast<std::size_t>(c[b])))
          throw ValidationError("context vectors " + std::to_string(c[a]) + " and " +
                                std::to_string(c[b]) + " are not orthogonal");
      }
    }
  }
  for (std::size_t i = 0; i < covered.size(); ++i)
    if (!covered[i])
      throw ValidationError("vector " + std::to_string(i) + " belongs to no context");
}

KSSet KSSet::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("KS set JSON must be an object");
  for (const char* key : {"dimension", "vectors", "contexts"})
    if (!j.contains(key)) throw InputError(std::string("KS set JSON lacks \"") + key + "\"");
  if (!j["dimension"].is_number_integer()) throw InputError("dimension must be an integer");
  const int dim = j["dimension"].get<int>();

  std::vector<std::vector<std::int64_t>> vectors;
  for (const auto& v : j["vectors"]) {
    if (!v.is_array()) throw InputError("each vector must be an array");
    std::vector<std::int64_t> comps;
    for (const auto& x : v) {
      if (!x.is_number_integer())
        throw InputError("vector components must be exact integers, got " + x.dump());
      comps.push_back(x.get<std::int64_t>());
    }
    vectors.push_back(std::move(comps));
  }
  std::vector<std::vector<int>> contexts;
  for (const auto& c : j["contexts"]) {
    if (!c.is_array()) throw InputError("each context must be an array");
    std::vector<int> idx;
    for (const auto& x : c) {
      if (!x.is_number_integer()) throw InputError("context entries must be integer indices");
      idx.push_back(x.get<int>());
    }
    contexts.push_back(std::move(idx));
  }
  return KSSet(j.value("name", std::string("unnamed")), dim, std::move(vectors),
               std::move(contexts));
}

KSSet KSSet::from_json_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("KS set JSON does not parse: ") + e.what());
  }
  return from_json(j);
}

KSSet KSSet::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open KS set file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

bool KSSet::orthogonal(std::size_t i, std::size_t j) const {
  return dot(vectors_.at(i), vectors_.at(j)) == 0;
}

std::vector<std::pair<int, int>> KSSet::orthogonal_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < vectors_.size(); ++i)
    for (std::size_t j = i + 1; j < vectors_.size(); ++j)
      if (orthogonal(i, j)) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return out;
}

std::vector<std::vector<int>> KSSet::full_contexts() const {
  std::vector<std::vector<int>> out;
  for (const auto& c : contexts_)
    if (c.size() == static_cast<std::size_t>(dim_)) out.push_back(c);
  return out;
}

nlohmann::json KSSet::to_json() const {
  return {{"name", name_}, {"dimension", dim_}, {"vectors", vectors_}, {"contexts", contexts_}};
}

// ---------------------------------------------------------------------------

namespace {

class ColouringSearch {
 public:
  explicit ColouringSearch(const KSSet& set) : contexts_(set.full_contexts()) {
    neighbours_.resize(set.size());
    for (auto [i, j] : set.orthogonal_pairs()) {
      neighbours_[static_cast<std::size_t>(i)].push_back(j);
      neighbours_[static_cast<std::size_t>(j)].push_back(i);
    }
    member_of_.resize(set.size());
    for (std::size_t c = 0; c < contexts_.size(); ++c)
      for (int v : contexts_[c]) member_of_[static_cast<std::size_t>(v)].push_back(c);
  }

  std::optional<std::vector<int>> run() {
    std::vector<int> colour(neighbours_.size(), -1);
    if (!solve(colour)) return std::nullopt;
    for (int& c : colour)
      if (c < 0) c = 0;
    return colour;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  // Assigns and propagates; false on contradiction.
  bool assign(std::vector<int>& colour, int v, int value) const {
    std::vector<std::pair<int, int>> queue{{v, value}};
    while (!queue.empty()) {
      auto [x, val] = queue.back();
      queue.pop_back();
      auto& slot = colour[static_cast<std::size_t>(x)];
      if (slot == val) continue;
      if (slot != -1) return false;
      slot = val;
      if (val == 1)
        for (int y : neighbours_[static_cast<std::size_t>(x)]) queue.emplace_back(y, 0);
      for (std::size_t c : member_of_[static_cast<std::size_t>(x)]) {
        int ones = 0, open = 0, last_open = -1;
        for (int y : contexts_[c]) {
          const int cy = colour[static_cast<std::size_t>(y)];
          if (cy == 1) ++ones;
          if (cy == -1) ++open, last_open = y;
        }
        if (ones > 1) return false;
        if (ones == 0 && open == 0) return false;
        if (ones == 0 && open == 1) queue.emplace_back(last_open, 1);
      }
    }
    return true;
  }

  bool solve(std::vector<int>& colour) {
    ++nodes_;
    // Branch on the unsatisfied context with the fewest open members.
    std::size_t best = contexts_.size();
    int best_open = 0;
    for (std::size_t c = 0; c < contexts_.size(); ++c) {
      int ones = 0, open = 0;
      for (int y : contexts_[c]) {
        const int cy = colour[static_cast<std::size_t>(y)];
        ones += cy == 1;
        open += cy == -1;
      }
      if (ones > 0) continue;
      if (best == contexts_.size() || open < best_open) best = c, best_open = open;
    }
    if (best == contexts_.size()) return true;
    for (int v : contexts_[best]) {
      if (colour[static_cast<std::size_t>(v)] != -1) continue;
      std::vector<int> trial = colour;
      if (assign(trial, v, 1) && solve(trial)) {
        colour = std::move(trial);
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<int>> contexts_;
  std::vector<std::vector<int>> neighbours_;
  std::vector<std::vector<std::size_t>> member_of_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

KSVerdict verify_ks_property(const KSSet& set) {
  ColouringSearch search(set);
  KSVerdict verdict;
  verdict.colouring = search.run();
  verdict.nodes = search.nodes();
  return verdict;
}

bool is_valid_colouring(const KSSet& set, const std::vector<int>& colouring) {
  if (colouring.size() != set.size()) return false;
  for (int c : colouring)
    if (c != 0 && c != 1) return false;
  for (auto [i, j] : set.orthogonal_pairs())
    if (colouring[static_cast<std::size_t>(i)] + colouring[static_cast<std::size_t>(j)] > 1)
      return false;
  for (const auto& ctx : set.full_contexts()) {
    int ones = 0;
    for (int v : ctx) ones += colouring[static_cast<std::size_t>(v)];
    if (ones != 1) return false;
  }
  return true;
}

KSSet load_verified(const std::filesystem::path& path) {
  auto set = KSSet::load_file(path);
  if (!verify_ks_property(set).has_ks_property())
    throw ValidationError("KS set " + set.name() + " admits a colouring; rejected");
  return set;
}

const KSSet& shipped_cabello18() {
  static const KSSet set = [] {
    auto s = KSSet::from_json_text(shipped_cabello18_json());
    if (!verify_ks_property(s).has_ks_property())
      throw ValidationError("shipped KS set failed verification");
    return s;
  }();
  return set;
}

}  // namespace ptlab::ks
