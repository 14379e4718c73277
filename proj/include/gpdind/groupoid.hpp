#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gpdind {

using Index = std::size_t;
inline constexpr Index kNone = static_cast<Index>(-1);

/// A finite groupoid stored as dense index tables.
///
/// Elements are numbered 0..size()-1 in construction order. The composition
/// table is row-major, compose[x * size() + y] = xy when s(x) = r(y) and kNone
/// otherwise. Instances are validated on construction and immutable after.
class FiniteGroupoid {
 public:
  struct Tables {
    std::vector<std::string> names;
    std::vector<Index> units;
    std::vector<Index> range;
    std::vector<Index> source;
    std::vector<Index> inverse;
    std::vector<Index> compose;
    // Optional per-element label used to address units (for instance the
    // point x of a transformation groupoid). Empty means "use the name".
    std::vector<std::string> unit_labels;
  };

  /// Validates every groupoid axiom; throws Error(AxiomViolation) naming the
  /// offending element, pair or triple, or Error(MalformedSpec) for tables of
  /// the wrong shape.
  explicit FiniteGroupoid(Tables tables);

  std::size_t size() const noexcept { return t_.names.size(); }
  const std::string& name(Index x) const { return t_.names[x]; }
  std::optional<Index> find(std::string_view name) const;

  Index range(Index x) const { return t_.range[x]; }
  Index source(Index x) const { return t_.source[x]; }
  Index inverse(Index x) const { return t_.inverse[x]; }
  bool composable(Index x, Index y) const { return t_.source[x] == t_.range[y]; }
  Index compose(Index x, Index y) const { return t_.compose[x * size() + y]; }

  std::span<const Index> units() const noexcept { return t_.units; }
  bool is_unit(Index x) const { return is_unit_[x]; }
  bool is_group() const noexcept { return t_.units.size() == 1; }

  /// G^u = r^{-1}(u), ascending.
  std::span<const Index> range_fiber(Index unit) const { return range_fibers_[unit]; }
  /// G_u = s^{-1}(u), ascending.
  std::span<const Index> source_fiber(Index unit) const { return source_fibers_[unit]; }

  const std::string& unit_label(Index unit) const;
  /// Accepts a unit label or an element name; throws Error(NotAUnit).
  Index resolve_unit(std::string_view text) const;

  const Tables& tables() const noexcept { return t_; }

  friend bool operator==(const FiniteGroupoid& a, const FiniteGroupoid& b) {
    return a.t_.names == b.t_.names && a.t_.units == b.t_.units && a.t_.range == b.t_.range &&
           a.t_.source == b.t_.source && a.t_.inverse == b.t_.inverse &&
           a.t_.compose == b.t_.compose;
  }

 private:
  void validate() const;

  Tables t_;
  std::vector<bool> is_unit_;
  std::vector<std::vector<Index>> range_fibers_;
  std::vector<std::vector<Index>> source_fibers_;
  std::unordered_map<std::string, Index> by_name_;
};

/// A subset of a parent groupoid closed under composition and inverse.
///
/// Keeps a re-indexed copy of itself as a standalone groupoid; local indices
/// follow ascending parent indices.
class Subgroupoid {
 public:
  Subgroupoid(const FiniteGroupoid& parent, std::vector<Index> members);

  const FiniteGroupoid& groupoid() const noexcept { return local_; }
  std::size_t parent_size() const noexcept { return to_local_.size(); }
  std::span<const Index> members() const noexcept { return members_; }
  /// H^(0) as parent indices.
  std::span<const Index> units() const noexcept { return units_; }

  bool contains(Index parent_index) const { return to_local_[parent_index] != kNone; }
  bool contains_unit(Index parent_unit) const { return contains(parent_unit); }
  Index to_local(Index parent_index) const { return to_local_[parent_index]; }
  Index to_parent(Index local_index) const { return members_[local_index]; }

  bool is_subset_of(const Subgroupoid& other) const;

  friend bool operator==(const Subgroupoid& a, const Subgroupoid& b) {
    return a.members_ == b.members_ && a.to_local_.size() == b.to_local_.size();
  }

 private:
  std::vector<Index> members_;
  std::vector<Index> units_;
  std::vector<Index> to_local_;
  FiniteGroupoid local_;
};

/// G_sH = s^{-1}(H^(0)) with its right H-action by composition.
class SFiberSpace {
 public:
  /// Verifies that the right H-action is free; throws Error(AxiomViolation).
  SFiberSpace(const FiniteGroupoid& g, const Subgroupoid& h);

  std::span<const Index> carrier() const noexcept { return carrier_; }
  std::size_t size() const noexcept { return carrier_.size(); }
  bool contains(Index x) const { return position_[x] != kNone; }
  /// Position of x in carrier(), or kNone.
  Index position(Index x) const { return position_[x]; }

 private:
  std::vector<Index> carrier_;
  std::vector<Index> position_;
};

// Standard constructions -----------------------------------------------------

/// Group from a Cayley table over `names`; table[a][b] = index of ab.
FiniteGroupoid group_from_cayley(std::vector<std::string> names,
                                 const std::vector<std::vector<Index>>& table);

/// Z/n with elements "0".."n-1".
FiniteGroupoid cyclic_group(std::size_t n);

/// S_3 as permutations of {1,2,3}, identity first.
FiniteGroupoid symmetric_group_3();

/// Pair groupoid X × X with (i,j)(j,k) = (i,k); elements "(i,j)".
FiniteGroupoid pair_groupoid(const std::vector<std::string>& points);
FiniteGroupoid pair_groupoid(std::size_t n);

/// Transformation groupoid of a left action; action[g][x] is the index of g·x.
/// Elements "(g,x)" with r(g,x) = g·x and s(g,x) = x. Throws
/// Error(NotAGroup) or Error(NotAnAction).
FiniteGroupoid transformation_groupoid(const FiniteGroupoid& group,
                                       const std::vector<std::string>& points,
                                       const std::vector<std::vector<Index>>& action);

/// Disjoint union; element names are prefixed with "<prefix>.".
FiniteGroupoid disjoint_union(const FiniteGroupoid& a, std::string_view prefix_a,
                              const FiniteGroupoid& b, std::string_view prefix_b);

// Distinguished subgroupoids ------------------------------------------------

/// G(u) = {x : s(x) = r(x) = u}; throws Error(NotAUnit).
Subgroupoid isotropy_group(const FiniteGroupoid& g, Index unit);
/// Union of all isotropy groups.
Subgroupoid isotropy_bundle(const FiniteGroupoid& g);
/// G^(0) as a subgroupoid.
Subgroupoid unit_subgroupoid(const FiniteGroupoid& g);
/// G itself.
Subgroupoid full_subgroupoid(const FiniteGroupoid& g);

}  // namespace gpdind
