#include "jetvar/jet.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace jetvar {

BundleSignature::BundleSignature(std::vector<std::string> base_names,
                                 std::vector<std::string> fiber_names)
    : base_(std::move(base_names)), fiber_(std::move(fiber_names)) {
  if (base_.empty()) throw std::invalid_argument("bundle needs at least one base coordinate");
  if (fiber_.empty()) throw std::invalid_argument("bundle needs at least one field");
  std::set<std::string> seen;
  for (const auto* names : {&base_, &fiber_}) {
    for (const auto& s : *names) {
      if (s.empty()) throw std::invalid_argument("empty coordinate name");
      if (!seen.insert(s).second)
        throw std::invalid_argument("duplicate coordinate name '" + s + "'");
    }
  }
}

int BundleSignature::base_index(const std::string& name) const {
  auto it = std::find(base_.begin(), base_.end(), name);
  return it == base_.end() ? -1 : static_cast<int>(it - base_.begin());
}

int BundleSignature::fiber_index(const std::string& name) const {
  auto it = std::find(fiber_.begin(), fiber_.end(), name);
  return it == fiber_.end() ? -1 : static_cast<int>(it - fiber_.begin());
}

MultiIndex::MultiIndex(std::vector<int> counts) : counts_(std::move(counts)) {
  for (int c : counts_)
    if (c < 0) throw std::invalid_argument("negative multi-index count");
}

MultiIndex MultiIndex::from_indices(std::size_t dim, const std::vector<int>& idx) {
  MultiIndex m(dim);
  for (int l : idx) m = m.add(static_cast<std::size_t>(l));
  return m;
}

int MultiIndex::order() const {
  return std::accumulate(counts_.begin(), counts_.end(), 0);
}

MultiIndex MultiIndex::add(std::size_t l) const {
  if (l >= counts_.size()) throw std::out_of_range("base index out of range");
  MultiIndex r = *this;
  ++r.counts_[l];
  return r;
}

MultiIndex MultiIndex::remove(std::size_t l) const {
  if (l >= counts_.size() || counts_[l] == 0)
    throw std::invalid_argument("base index not present in multi-index");
  MultiIndex r = *this;
  --r.counts_[l];
  return r;
}

std::vector<int> MultiIndex::indices() const {
  std::vector<int> out;
  for (std::size_t l = 0; l < counts_.size(); ++l)
    out.insert(out.end(), static_cast<std::size_t>(counts_[l]), static_cast<int>(l));
  return out;
}

int MultiIndex::largest() const {
  for (std::size_t l = counts_.size(); l-- > 0;)
    if (counts_[l] > 0) return static_cast<int>(l);
  return -1;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& o) const {
  if (auto c = order() <=> o.order(); c != 0) return c;
  // Equal order: a larger count on an earlier base index sorts first, which
  // is the lexicographic order of the sorted index sequences.
  const std::size_t n = std::min(counts_.size(), o.counts_.size());
  for (std::size_t l = 0; l < n; ++l)
    if (counts_[l] != o.counts_[l]) return o.counts_[l] <=> counts_[l];
  return counts_.size() <=> o.counts_.size();
}

std::strong_ordering JetVariable::operator<=>(const JetVariable& o) const {
  if (auto c = order() <=> o.order(); c != 0) return c;
  if (auto c = field <=> o.field; c != 0) return c;
  return index <=> o.index;
}

namespace {

void multi_indices_of_order(std::size_t dim, int order, std::size_t from,
                            MultiIndex cur, std::vector<MultiIndex>& out) {
  if (order == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t l = from; l < dim; ++l)
    multi_indices_of_order(dim, order - 1, l, cur.add(l), out);
}

}  // namespace

std::vector<MultiIndex> multi_indices_up_to(std::size_t dim, int max_order) {
  std::vector<MultiIndex> out;
  for (int r = 0; r <= max_order; ++r)
    multi_indices_of_order(dim, r, 0, MultiIndex(dim), out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<JetVariable> enumerate_jets(const BundleSignature& sig, int max_order) {
  if (max_order < 0) throw std::invalid_argument("max_order must be non-negative");
  std::vector<JetVariable> out;
  for (int r = 0; r <= max_order; ++r) {
    std::vector<MultiIndex> idx;
    multi_indices_of_order(sig.base_dim(), r, 0, MultiIndex(sig.base_dim()), idx);
    std::sort(idx.begin(), idx.end());
    for (std::size_t i = 0; i < sig.fiber_dim(); ++i)
      for (const auto& m : idx) out.push_back({static_cast<int>(i), m});
  }
  return out;
}

}  // namespace jetvar
