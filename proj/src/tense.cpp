#include "rtmml/tense.hpp"

namespace rtmml {

std::string_view to_string(View v) {
  switch (v) {
    case View::simple: return "simple";
    case View::anterior: return "anterior";
    case View::posterior: return "posterior";
  }
  return "";
}

std::string_view to_string(Tense t) {
  switch (t) {
    case Tense::past: return "past";
    case Tense::present: return "present";
    case Tense::future: return "future";
  }
  return "";
}

std::optional<View> parse_view(std::string_view s) {
  if (s == "simple") return View::simple;
  if (s == "anterior") return View::anterior;
  if (s == "posterior") return View::posterior;
  return std::nullopt;
}

std::optional<Tense> parse_tense(std::string_view s) {
  if (s == "past") return Tense::past;
  if (s == "present") return Tense::present;
  if (s == "future") return Tense::future;
  return std::nullopt;
}

namespace {

RelationSet sr_of(Tense t) {
  switch (t) {
    case Tense::past: return RelationSet::gt();     // R < S
    case Tense::present: return RelationSet::eq();  // R = S
    case Tense::future: return RelationSet::lt();   // S < R
  }
  return RelationSet::none();
}

RelationSet er_of(View v) {
  switch (v) {
    case View::anterior: return RelationSet::lt();   // E < R
    case View::simple: return RelationSet::eq();     // E = R
    case View::posterior: return RelationSet::gt();  // R < E
  }
  return RelationSet::none();
}

std::array<TenseProfile, 9> make_profiles() {
  auto profile = [](View v, Tense t, std::optional<std::string> reich,
                    std::optional<std::string> english) {
    return TenseProfile{v, t, sr_of(t), er_of(v), std::move(reich),
                        std::move(english)};
  };
  return {
      profile(View::anterior, Tense::past, "Anterior past", "Past perfect"),
      profile(View::simple, Tense::past, "Simple past", "Simple past"),
      profile(View::posterior, Tense::past, "Posterior past", std::nullopt),
      profile(View::anterior, Tense::present, "Anterior present",
              "Present perfect"),
      profile(View::simple, Tense::present, "Simple present",
              "Simple present"),
      profile(View::posterior, Tense::present, "Posterior present",
              "Simple future"),
      profile(View::anterior, Tense::future, "Anterior future",
              "Future perfect"),
      profile(View::simple, Tense::future, "Simple future", "Simple future"),
      profile(View::posterior, Tense::future, "Posterior future",
              std::nullopt),
  };
}

}  // namespace

TenseRelations tense_to_relations(View view, Tense tense) {
  RelationSet sr = sr_of(tense);
  RelationSet er = er_of(view);
  // S-to-E via the reference point: S-to-R composed with R-to-E.
  RelationSet se = compose(sr, converse(er));
  return {sr, er, se};
}

std::optional<TenseProfile> classify_tense(RelationSet sr, RelationSet er) {
  if (!sr.singleton() || !er.singleton()) return std::nullopt;
  for (const TenseProfile& p : tense_profiles()) {
    if (p.sr == sr && p.er == er) return p;
  }
  return std::nullopt;
}

const std::array<TenseProfile, 9>& tense_profiles() {
  static const std::array<TenseProfile, 9> profiles = make_profiles();
  return profiles;
}

}  // namespace rtmml
