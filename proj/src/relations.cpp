#include "rtmml/relations.hpp"

namespace rtmml {

std::optional<RelationSet> RelationSet::from_string(std::string_view s) {
  std::uint8_t bits = 0;
  for (char c : s) {
    switch (c) {
      case '<': bits |= LT; break;
      case '=': bits |= EQ; break;
      case '>': bits |= GT; break;
      default: return std::nullopt;
    }
  }
  return RelationSet(bits);
}

std::string RelationSet::to_string() const {
  std::string out;
  if (bits_ & LT) out += '<';
  if (bits_ & EQ) out += '=';
  if (bits_ & GT) out += '>';
  return out;
}

RelationSet compose(RelationSet ab, RelationSet bc) {
  // Composition over basic relations, indexed <, =, >.
  static constexpr std::uint8_t LT = RelationSet::LT;
  static constexpr std::uint8_t EQ = RelationSet::EQ;
  static constexpr std::uint8_t GT = RelationSet::GT;
  static constexpr std::uint8_t ALL = LT | EQ | GT;
  static constexpr std::uint8_t table[3][3] = {
      /* <  */ {LT, LT, ALL},
      /* =  */ {LT, EQ, GT},
      /* >  */ {ALL, GT, GT},
  };
  std::uint8_t out = 0;
  for (int i = 0; i < 3; ++i) {
    if (!(ab.bits() & (1 << i))) continue;
    for (int j = 0; j < 3; ++j) {
      if (!(bc.bits() & (1 << j))) continue;
      out |= table[i][j];
    }
  }
  return RelationSet::of(out);
}

}  // namespace rtmml
