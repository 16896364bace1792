#pragma once

#include <bitset>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

// Filters and ultrafilters on a finite ground set {0, ..., size-1}, checked by
// brute force. Subsets are bitmasks; a family is an indicator over all 2^size
// subsets, so membership tests and deduplication are free.

namespace hyperreal::filters {

using Subset = std::uint8_t;

class GroundSet {
 public:
  static constexpr int kMaxSize = 8;
  static constexpr int kMaxExhaustiveSize = 5;

  explicit GroundSet(int size);

  int size() const noexcept { return size_; }
  Subset full() const noexcept { return static_cast<Subset>((1u << size_) - 1u); }
  unsigned subset_count() const noexcept { return 1u << size_; }
  Subset complement(Subset s) const noexcept { return static_cast<Subset>(full() & ~s); }

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  int size_;
};

Subset make_subset(std::initializer_list<int> elements);
std::vector<int> elements_of(Subset s);

class SetFamily {
 public:
  explicit SetFamily(GroundSet ground);
  /// Throws InvalidArgument if a member is not a subset of the ground set.
  SetFamily(GroundSet ground, const std::vector<Subset>& members);

  static SetFamily powerset(GroundSet g);
  /// {I}
  static SetFamily whole(GroundSet g);
  /// {S : i in S}
  static SetFamily principal(GroundSet g, int i);
  /// {S : I - S finite}; on a finite ground set this is every subset.
  static SetFamily cofinite(GroundSet g);

  const GroundSet& ground() const noexcept { return ground_; }
  bool contains(Subset s) const { return bits_.test(s); }
  void insert(Subset s);
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  std::vector<Subset> members() const;
  /// Sorted lists of sorted elements, the rendering used in JSON output.
  std::vector<std::vector<int>> sorted_lists() const;

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

 private:
  GroundSet ground_;
  std::bitset<256> bits_;
};

struct FamilyReport {
  bool is_filter = false;
  bool is_proper = false;  // empty set not a member; reported for any family
  bool is_ultrafilter = false;
  std::optional<int> principal_generator;
};

/// An ultrafilter must be a proper filter that contains A or I - A for every A.
FamilyReport classify_family(const SetFamily& f);

/// Smallest family containing `seed` that is closed under intersection and
/// superset. Always contains I.
SetFamily generate_filter(const SetFamily& seed);

enum class EnumerationMode {
  Exhaustive,  // every family on the ground set (size <= 5)
  Generator,   // the filter generated by each nonempty subset (size <= 8)
};

/// All proper ultrafilters, ordered by generator.
std::vector<SetFamily> enumerate_ultrafilters(GroundSet g,
                                              EnumerationMode mode = EnumerationMode::Exhaustive);

}  // namespace hyperreal::filters
