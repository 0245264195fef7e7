#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "rtmml/relations.hpp"

namespace rtmml {

// The anterior/simple/posterior distinction. Fixes how event time relates
// to reference time: anterior puts E before R, simple makes them
// simultaneous, posterior puts E after R.
enum class View { simple, anterior, posterior };

// Past/present/future in the point model. Fixes how reference time relates
// to speech time: in the past R precedes S, in the present they coincide,
// in the future R follows S.
enum class Tense { past, present, future };

std::string_view to_string(View v);
std::string_view to_string(Tense t);
std::optional<View> parse_view(std::string_view s);
std::optional<Tense> parse_tense(std::string_view s);

// The S-to-R, E-to-R and S-to-E labels induced by a (view, tense) pair.
// sr and er are singletons; se may be disjunctive because several point
// arrangements can share one named tense.
struct TenseRelations {
  RelationSet sr;
  RelationSet er;
  RelationSet se;
};

// One of the nine named (view, tense) pairs with its canonical relations
// and the traditional names attached to it.
struct TenseProfile {
  View view;
  Tense tense;
  RelationSet sr;
  RelationSet er;
  std::optional<std::string> reichenbach_name;
  std::optional<std::string> english_name;
};

// tense fixes sr, view fixes er, and se follows by chaining S-R-E.
TenseRelations tense_to_relations(View view, Tense tense);

// Inverse of tense_to_relations for singleton sr and er; disjunctive input
// is ambiguous and yields nothing.
std::optional<TenseProfile> classify_tense(RelationSet sr, RelationSet er);

// All nine profiles in a fixed order (past/present/future x
// anterior/simple/posterior).
const std::array<TenseProfile, 9>& tense_profiles();

}  // namespace rtmml
