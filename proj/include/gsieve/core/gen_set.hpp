#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "gsieve/errors.hpp"

namespace gsieve {

/// Symmetric generating set S = S^{-1}. Duplicates are collapsed, so the walk
/// measure is uniform on distinct elements. With `lazy` the walk instead holds
/// still with probability 1/2 and otherwise steps uniformly in S.
template <class E>
class GenSet {
 public:
  /// Adds every missing inverse, keeping first-seen order.
  static GenSet symmetrized(const std::vector<E>& elems, bool lazy = false) {
    GenSet s;
    s.lazy_ = lazy;
    for (const auto& e : elems) {
      s.add_unique(e);
      s.add_unique(e.inverse());
    }
    require(!s.members_.empty(), Errc::invalid_argument, "generating set is empty");
    return s;
  }

  /// Keeps the set as given after checking that it is closed under inversion.
  static GenSet verified_symmetric(const std::vector<E>& elems, bool lazy = false) {
    GenSet s;
    s.lazy_ = lazy;
    for (const auto& e : elems) s.add_unique(e);
    require(!s.members_.empty(), Errc::invalid_argument, "generating set is empty");
    for (const auto& e : s.members_) {
      require(s.contains(e.inverse()), Errc::not_symmetric, "generating set is not closed under inverse");
    }
    return s;
  }

  const std::vector<E>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool lazy() const noexcept { return lazy_; }
  const E& operator[](std::size_t i) const { return members_[i]; }

  bool contains(const E& e) const { return std::find(members_.begin(), members_.end(), e) != members_.end(); }

  std::size_t index_of_inverse(std::size_t i) const {
    const E inv = members_[i].inverse();
    return static_cast<std::size_t>(std::find(members_.begin(), members_.end(), inv) - members_.begin());
  }

  GenSet with_lazy(bool lazy) const {
    GenSet s = *this;
    s.lazy_ = lazy;
    return s;
  }

  /// Image under a homomorphism; the image is re-symmetrized and deduplicated.
  template <class F>
  auto map(F&& f) const {
    using Out = std::decay_t<decltype(f(members_.front()))>;
    std::vector<Out> out;
    out.reserve(members_.size());
    for (const auto& e : members_) out.push_back(f(e));
    return GenSet<Out>::symmetrized(out, lazy_);
  }

 private:
  void add_unique(const E& e) {
    if (!contains(e)) members_.push_back(e);
  }

  std::vector<E> members_;
  bool lazy_ = false;
};

}  // namespace gsieve
