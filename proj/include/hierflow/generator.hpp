#pragma once

// Grassmann generators and 128-bit monomial keys.

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace hierflow {

enum class Species : std::uint8_t { A = 0, B = 1, Electron = 2 };
enum class Spin : std::uint8_t { Up = 0, Down = 1 };
enum class Conj : std::uint8_t { Minus = 0, Plus = 1 };

inline constexpr int kExternalSlot = 8;
inline constexpr int kGeneratorsPerSlot = 12;
inline constexpr int kMaxGenerators = 9 * kGeneratorsPerSlot;

/// A field psi^{conj}_{species,spin} living in an internal child box (slot
/// 0..7) or in the external parent box (slot 8). Ordered by slot, species,
/// spin, then conjugation.
struct GeneratorId {
  std::uint8_t slot = kExternalSlot;
  Species species = Species::A;
  Spin spin = Spin::Up;
  Conj conj = Conj::Minus;

  static GeneratorId internal(int child, Species s, Spin sp, Conj c) {
    return {static_cast<std::uint8_t>(child), s, sp, c};
  }
  static GeneratorId external(Species s, Spin sp, Conj c) { return {kExternalSlot, s, sp, c}; }
  static GeneratorId from_ordinal(int ordinal);

  bool is_external() const { return slot == kExternalSlot; }
  int ordinal() const {
    return slot * kGeneratorsPerSlot + static_cast<int>(species) * 4 + static_cast<int>(spin) * 2 +
           static_cast<int>(conj);
  }
  GeneratorId with_slot(int s) const { return {static_cast<std::uint8_t>(s), species, spin, conj}; }
  GeneratorId conjugate() const { return {slot, species, spin, conj == Conj::Minus ? Conj::Plus : Conj::Minus}; }

  /// e.g. "a_up^+@ext" or "e_dn^-@2".
  std::string name() const;

  friend bool operator==(const GeneratorId& x, const GeneratorId& y) { return x.ordinal() == y.ordinal(); }
  friend std::strong_ordering operator<=>(const GeneratorId& x, const GeneratorId& y) {
    return x.ordinal() <=> y.ordinal();
  }
};

/// Set of generators as a bitmask over ordinals.
class MonomialKey {
 public:
  constexpr MonomialKey() = default;
  constexpr MonomialKey(std::uint64_t lo, std::uint64_t hi) : lo_(lo), hi_(hi) {}

  static MonomialKey single(int ordinal) {
    return ordinal < 64 ? MonomialKey(std::uint64_t{1} << ordinal, 0)
                        : MonomialKey(0, std::uint64_t{1} << (ordinal - 64));
  }
  static MonomialKey single(const GeneratorId& g) { return single(g.ordinal()); }
  /// Generators in slot s only.
  static MonomialKey slot_mask(int s);

  bool empty() const { return lo_ == 0 && hi_ == 0; }
  int degree() const { return std::popcount(lo_) + std::popcount(hi_); }
  bool contains(int ordinal) const {
    return ordinal < 64 ? ((lo_ >> ordinal) & 1U) != 0 : ((hi_ >> (ordinal - 64)) & 1U) != 0;
  }
  bool disjoint(const MonomialKey& o) const { return (lo_ & o.lo_) == 0 && (hi_ & o.hi_) == 0; }
  int count_above(int ordinal) const;
  int count_below(int ordinal) const { return degree() - count_above(ordinal) - (contains(ordinal) ? 1 : 0); }

  MonomialKey operator|(const MonomialKey& o) const { return {lo_ | o.lo_, hi_ | o.hi_}; }
  MonomialKey operator&(const MonomialKey& o) const { return {lo_ & o.lo_, hi_ & o.hi_}; }
  MonomialKey without(const MonomialKey& o) const { return {lo_ & ~o.lo_, hi_ & ~o.hi_}; }

  /// Ordinals in ascending (canonical) order.
  std::vector<int> ordinals() const;
  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t w = lo_; w != 0; w &= w - 1) f(std::countr_zero(w));
    for (std::uint64_t w = hi_; w != 0; w &= w - 1) f(64 + std::countr_zero(w));
  }

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }

  friend bool operator==(const MonomialKey&, const MonomialKey&) = default;
  friend std::strong_ordering operator<=>(const MonomialKey& a, const MonomialKey& b) {
    if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
    return a.lo_ <=> b.lo_;
  }

 private:
  std::uint64_t lo_ = 0;
  std::uint64_t hi_ = 0;
};

/// Sign of the reordering that sorts the concatenation a.b of two canonical
/// disjoint monomials.
int product_sign(const MonomialKey& a, const MonomialKey& b);

/// Sign of rewriting the canonical monomial of `key` as (key \ inner).(key & inner),
/// i.e. moving the generators of `inner` to the right end.
int split_sign(const MonomialKey& key, const MonomialKey& inner);

/// Sorts a sequence of ordinals, returning the permutation sign, or 0 if an
/// ordinal repeats.
int sort_with_sign(std::vector<int>& ordinals);

std::string monomial_name(const MonomialKey& key);

}  // namespace hierflow
