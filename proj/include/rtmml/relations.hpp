#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace rtmml {

// A subset of the basic point relations {<, =, >}. Every temporal edge is
// labelled with a non-empty subset; the empty set is only ever produced as
// an inconsistency signal and is never stored on an edge. The full set
// {<,=,>} means "unconstrained".
class RelationSet {
 public:
  static constexpr std::uint8_t LT = 1;  // <
  static constexpr std::uint8_t EQ = 2;  // =
  static constexpr std::uint8_t GT = 4;  // >

  constexpr RelationSet() = default;
  static constexpr RelationSet none() { return RelationSet(0); }
  static constexpr RelationSet lt() { return RelationSet(LT); }
  static constexpr RelationSet eq() { return RelationSet(EQ); }
  static constexpr RelationSet gt() { return RelationSet(GT); }
  static constexpr RelationSet all() { return RelationSet(LT | EQ | GT); }
  static constexpr RelationSet of(std::uint8_t bits) {
    return RelationSet(bits & 7);
  }

  // Reads a relation string over the characters '<', '=', '>'. Order is
  // irrelevant and duplicates collapse; "" yields the empty set. Any other
  // character makes the whole string invalid.
  static std::optional<RelationSet> from_string(std::string_view s);

  // Canonical form: members in '<', '=', '>' order, e.g. "<=", "<=>".
  std::string to_string() const;

  constexpr std::uint8_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool full() const { return bits_ == (LT | EQ | GT); }
  constexpr bool singleton() const {
    return bits_ != 0 && (bits_ & (bits_ - 1)) == 0;
  }
  constexpr bool contains(std::uint8_t basic) const {
    return (bits_ & basic) != 0;
  }
  constexpr bool subset_of(RelationSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }

  friend constexpr RelationSet operator&(RelationSet a, RelationSet b) {
    return RelationSet(static_cast<std::uint8_t>(a.bits_ & b.bits_));
  }
  friend constexpr RelationSet operator|(RelationSet a, RelationSet b) {
    return RelationSet(static_cast<std::uint8_t>(a.bits_ | b.bits_));
  }
  friend constexpr bool operator==(RelationSet a, RelationSet b) {
    return a.bits_ == b.bits_;
  }
  friend constexpr bool operator!=(RelationSet a, RelationSet b) {
    return a.bits_ != b.bits_;
  }
  friend constexpr bool operator<(RelationSet a, RelationSet b) {
    return a.bits_ < b.bits_;
  }

 private:
  explicit constexpr RelationSet(std::uint8_t bits) : bits_(bits) {}
  std::uint8_t bits_ = 0;
};

// Relation composition: the possible relations of a to c given a-to-b and
// b-to-c, extended to sets pointwise. All basic relations are transitive,
// so (<,<) gives {<} and (>,>) gives {>}; the opposed pairs (<,>) and (>,<)
// tell us nothing and give the full set.
RelationSet compose(RelationSet ab, RelationSet bc);

// Constraint conjunction; an empty result means the constraints conflict.
constexpr RelationSet intersect(RelationSet a, RelationSet b) { return a & b; }

// Swap < and >, keep =. converse(rel(a,b)) = rel(b,a).
constexpr RelationSet converse(RelationSet r) {
  std::uint8_t b = r.bits();
  std::uint8_t out = static_cast<std::uint8_t>(b & RelationSet::EQ);
  if (b & RelationSet::LT) out |= RelationSet::GT;
  if (b & RelationSet::GT) out |= RelationSet::LT;
  return RelationSet::of(out);
}

}  // namespace rtmml
