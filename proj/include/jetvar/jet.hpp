#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace jetvar {

/// Coordinates of a fibre bundle Y -> X in a single chart: base names
/// x^1..x^n and fibre (field) names y^1..y^m. The order of both lists is
/// fixed at construction and defines every canonical ordering downstream.
class BundleSignature {
 public:
  BundleSignature(std::vector<std::string> base_names,
                  std::vector<std::string> fiber_names);

  std::size_t base_dim() const { return base_.size(); }
  std::size_t fiber_dim() const { return fiber_.size(); }

  const std::vector<std::string>& base_names() const { return base_; }
  const std::vector<std::string>& fiber_names() const { return fiber_; }
  const std::string& base_name(std::size_t i) const { return base_.at(i); }
  const std::string& fiber_name(std::size_t i) const { return fiber_.at(i); }

  /// Index of a base / fibre name, or -1.
  int base_index(const std::string& name) const;
  int fiber_index(const std::string& name) const;

  bool operator==(const BundleSignature&) const = default;

 private:
  std::vector<std::string> base_;
  std::vector<std::string> fiber_;
};

/// Symmetric multi-index over the base coordinates, stored as a count
/// vector: counts[l] is the multiplicity of base index l. Commuting total
/// derivatives are therefore structural.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dim) : counts_(dim, 0) {}
  explicit MultiIndex(std::vector<int> counts);

  /// Builds a multi-index from a list of base indices, e.g. {0, 1, 1}.
  static MultiIndex from_indices(std::size_t dim, const std::vector<int>& idx);

  std::size_t dim() const { return counts_.size(); }
  int order() const;
  int count(std::size_t l) const { return counts_.at(l); }
  const std::vector<int>& counts() const { return counts_; }

  /// lambda + Lambda. Throws std::out_of_range if l >= dim().
  MultiIndex add(std::size_t l) const;
  /// Lambda - lambda. Throws std::invalid_argument if count(l) == 0.
  MultiIndex remove(std::size_t l) const;

  /// Base indices in non-decreasing order, e.g. (x,t,t) -> {0,1,1}.
  std::vector<int> indices() const;
  /// Largest base index present; -1 for the empty multi-index.
  int largest() const;

  bool operator==(const MultiIndex&) const = default;
  /// Order first, then the sorted index sequence lexicographically.
  std::strong_ordering operator<=>(const MultiIndex& o) const;

 private:
  std::vector<int> counts_;
};

inline MultiIndex mi_add(const MultiIndex& m, std::size_t l) { return m.add(l); }
inline int mi_order(const MultiIndex& m) { return m.order(); }

/// Jet coordinate y^i_Lambda.
struct JetVariable {
  int field = 0;
  MultiIndex index;

  int order() const { return index.order(); }

  bool operator==(const JetVariable&) const = default;
  /// Canonical order: |Lambda|, then field, then the multi-index.
  std::strong_ordering operator<=>(const JetVariable& o) const;
};

/// All multi-indices over a dim-dimensional base with order <= max_order,
/// in canonical order.
std::vector<MultiIndex> multi_indices_up_to(std::size_t dim, int max_order);

/// Every y^i_Lambda with |Lambda| <= max_order, in canonical order.
std::vector<JetVariable> enumerate_jets(const BundleSignature& sig,
                                        int max_order);

}  // namespace jetvar
