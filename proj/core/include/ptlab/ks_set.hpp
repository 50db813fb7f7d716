#pragma once

// Finite vector families with orthogonality contexts, and the exhaustive
// {0,1}-colouring search that certifies the Kochen-Specker property.
//
// File format (JSON):
//   { "dimension": d,
//     "vectors":  [[int, ...], ...],      // exact integer components
//     "contexts": [[index, ...], ...] }   // mutually orthogonal index tuples
// Optional "name" and "description" strings are carried through. Floats are
// rejected; normalization happens at load.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace ptlab::ks {

class KSSet {
 public:
  /// Validates structure and exact orthogonality of every context.
  KSSet(std::string name, int dimension, std::vector<std::vector<std::int64_t>> vectors,
        std::vector<std::vector<int>> contexts);

  static KSSet from_json(const nlohmann::json& j);
  static KSSet from_json_text(std::string_view text);
  static KSSet load_file(const std::filesystem::path& path);

  const std::string& name() const noexcept { return name_; }
  int dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  const std::vector<std::int64_t>& vector(std::size_t i) const { return vectors_.at(i); }
  /// Unit-length copy of vector i.
  const std::vector<double>& unit_vector(std::size_t i) const { return units_.at(i); }
  const std::vector<std::vector<int>>& contexts() const noexcept { return contexts_; }

  /// Exact integer inner product test.
  bool orthogonal(std::size_t i, std::size_t j) const;
  /// Every orthogonal pair (i < j), lexicographic.
  std::vector<std::pair<int, int>> orthogonal_pairs() const;
  /// Contexts with exactly `dimension()` members.
  std::vector<std::vector<int>> full_contexts() const;

  nlohmann::json to_json() const;

 private:
  std::string name_;
  int dim_;
  std::vector<std::vector<std::int64_t>> vectors_;
  std::vector<std::vector<double>> units_;
  std::vector<std::vector<int>> contexts_;
};

struct KSVerdict {
  /// A valid colouring (one entry per vector) when the set is colourable.
  std::optional<std::vector<int>> colouring;
  /// Search nodes visited before the verdict; the certificate for
  /// non-colourability is that the exhaustive search ran to completion.
  std::uint64_t nodes = 0;

  bool has_ks_property() const noexcept { return !colouring.has_value(); }
};

/// Backtracking search for a {0,1}-colouring with at most one 1 on every
/// orthogonal pair and exactly one 1 on every full (d-member) context.
KSVerdict verify_ks_property(const KSSet& set);

/// True if `colouring` meets both colouring conditions.
bool is_valid_colouring(const KSSet& set, const std::vector<int>& colouring);

/// Loads a set and rejects it unless the search proves the KS property.
KSSet load_verified(const std::filesystem::path& path);

/// The 18-vector set in R^4 (9 contexts) shipped in core/data/ks.
std::string_view shipped_cabello18_json();
const KSSet& shipped_cabello18();

}  // namespace ptlab::ks
