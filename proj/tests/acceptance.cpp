// Acceptance checks for the toolkit: one PASS/FAIL line per criterion,
// nonzero exit when anything fails. Run as
//   rtmml_acceptance --cli <path-to-rtmml> --fixtures <fixture-dir>
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rtmml/errors.hpp"
#include "rtmml/graph.hpp"
#include "rtmml/parser.hpp"
#include "rtmml/reasoner.hpp"
#include "rtmml/tense.hpp"
#include "rtmml/timeml.hpp"

using namespace rtmml;

namespace {

std::string g_cli;
std::string g_fixtures;

std::string fixture(const std::string& name) { return g_fixtures + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AnnotatedDocument load(const std::string& name, std::string& why) {
  ParseResult res = parse_rtmml(read_file(fixture(name)));
  if (!res.report.ok()) {
    why = name + " failed to parse: " + res.report.to_text();
    throw Error(why);
  }
  return std::move(res.document);
}

ClosureResult load_closed(const std::string& name, std::string& why) {
  return close(build_graph(load(name, why)));
}

TimePointId E(const char* v) { return TimePointId::verb(v, PointSel::e); }

// ----- criterion 1: the documented deductions, each within a second -----

bool crit1(std::string& why) {
  struct Deduction {
    const char* name;
    TimePointId a;
    TimePointId b;
  };
  const Deduction cases[] = {
      {"example4.rtmml", E("v2"), E("v1")},
      {"copperfield.rtmml", E("v1"), E("v2")},
      {"saddam.rtmml", E("v2"), E("v1")},
      {"wsj0533.rtmml", E("v1"), TimePointId::timex("t1")},
  };
  for (const Deduction& d : cases) {
    auto t0 = std::chrono::steady_clock::now();
    ClosureResult res = load_closed(d.name, why);
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    if (!res.consistent) {
      why = std::string(d.name) + " closed inconsistent";
      return false;
    }
    if (query_relation(res, d.a, d.b) != RelationSet::lt()) {
      why = std::string(d.name) + ": expected " + d.a.name() + " < " +
            d.b.name() + ", got " +
            query_relation(res, d.a, d.b).to_string();
      return false;
    }
    if (secs >= 1.0) {
      why = std::string(d.name) + " took " + std::to_string(secs) + "s";
      return false;
    }
  }
  return true;
}

// ----- criterion 2: the tense table and its thirteen arrangements -----

RelationSet rel_of(int a, int b) {
  if (a < b) return RelationSet::lt();
  if (a == b) return RelationSet::eq();
  return RelationSet::gt();
}

bool crit2(std::string& why) {
  for (const TenseProfile& p : tense_profiles()) {
    TenseRelations rel = tense_to_relations(p.view, p.tense);
    if (rel.sr != p.sr || rel.er != p.er) {
      why = std::string("profile ") + std::string(to_string(p.view)) + " " +
            std::string(to_string(p.tense)) + " disagrees with its table row";
      return false;
    }
    std::optional<TenseProfile> back = classify_tense(rel.sr, rel.er);
    if (!back || back->view != p.view || back->tense != p.tense) {
      why = std::string("classify_tense does not invert ") +
            std::string(to_string(p.view)) + " " +
            std::string(to_string(p.tense));
      return false;
    }
  }

  // every placement of S, E, R on a line, keyed by its relation signature
  struct Sig {
    RelationSet sr, er, se;
    bool operator<(const Sig& o) const {
      auto key = [](const Sig& s) {
        return std::make_tuple(s.sr.bits(), s.er.bits(), s.se.bits());
      };
      return key(*this) < key(o);
    }
  };
  std::vector<Sig> seen;
  std::map<std::pair<std::uint8_t, std::uint8_t>, int> per_cell;
  for (int s = 0; s < 3; ++s)
    for (int e = 0; e < 3; ++e)
      for (int r = 0; r < 3; ++r) {
        Sig sig{rel_of(s, r), rel_of(e, r), rel_of(s, e)};
        bool dup = false;
        for (const Sig& old : seen)
          if (!(old < sig) && !(sig < old)) dup = true;
        if (dup) continue;
        seen.push_back(sig);
        std::optional<TenseProfile> cell = classify_tense(sig.sr, sig.er);
        if (!cell) {
          why = "an arrangement fits no (view, tense) cell";
          return false;
        }
        TenseRelations rel = tense_to_relations(cell->view, cell->tense);
        if (!sig.se.subset_of(rel.se)) {
          why = "an arrangement realizes an S-E relation its cell excludes";
          return false;
        }
        ++per_cell[{sig.sr.bits(), sig.er.bits()}];
      }
  if (seen.size() != 13) {
    why = "expected 13 distinct arrangements, found " +
          std::to_string(seen.size());
    return false;
  }
  if (per_cell.size() != 9) {
    why = "the arrangements cover " + std::to_string(per_cell.size()) +
          " cells, not 9";
    return false;
  }
  auto count = [&](View v, Tense t) {
    TenseRelations rel = tense_to_relations(v, t);
    return per_cell[{rel.sr.bits(), rel.er.bits()}];
  };
  if (count(View::posterior, Tense::past) != 3 ||
      count(View::anterior, Tense::future) != 3 ||
      count(View::simple, Tense::present) != 1) {
    why = "arrangement multiplicities disagree with the table";
    return false;
  }
  return true;
}

// ----- criterion 3: closure vs. exhaustive enumeration -----

bool crit3(std::string& why) {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(9011);
  int trials = 520;
  for (int iter = 0; iter < trials; ++iter) {
    std::size_t n = 3 + rng() % 4;
    std::vector<TimePointId> pts;
    for (std::size_t i = 0; i < n; ++i)
      pts.push_back(TimePointId::named("p" + std::to_string(i)));
    ConstraintGraph g;
    for (const TimePointId& p : pts) g.add_node(p);
    unsigned density = (iter % 2) ? 70 : 35;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng() % 100 < density)
          g.add_constraint(
              pts[i], pts[j],
              RelationSet::of(static_cast<std::uint8_t>(1 + rng() % 7)),
              {"e"});
    ClosureResult res = close(g);
    OracleResult oracle = oracle_minimal_labels(g);
    if (!res.neq_present && res.consistent != oracle.consistent) {
      why = "verdict disagrees with the oracle on a convex instance (trial " +
            std::to_string(iter) + ")";
      return false;
    }
    if (oracle.consistent && !res.consistent) {
      why = "closure rejected a satisfiable network (trial " +
            std::to_string(iter) + ")";
      return false;
    }
    if (oracle.consistent && res.consistent)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!oracle.labels.at({pts[i], pts[j]})
                   .subset_of(res.graph.query(pts[i], pts[j]))) {
            why = "closure pruned a realizable relation (trial " +
                  std::to_string(iter) + ")";
            return false;
          }
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (secs >= 60.0) {
    why = "the " + std::to_string(trials) + " trials took " +
          std::to_string(secs) + "s";
    return false;
  }
  return true;
}

// ----- criterion 4: algebra and closure laws, 1000+ cases each -----

bool crit4(std::string& why) {
  std::mt19937 rng(20120515);
  auto rand_rel = [&] {
    return RelationSet::of(static_cast<std::uint8_t>(1 + rng() % 7));
  };

  for (int i = 0; i < 1200; ++i) {
    RelationSet a = rand_rel(), b = rand_rel(), c = rand_rel();
    RelationSet wider = a | b;
    if (!compose(a, c).subset_of(compose(wider, c)) ||
        !compose(c, a).subset_of(compose(c, wider))) {
      why = "composition is not monotone";
      return false;
    }
    if (converse(converse(a)) != a) {
      why = "converse is not an involution";
      return false;
    }
    if (converse(compose(a, b)) != compose(converse(b), converse(a))) {
      why = "converse does not anti-distribute over composition";
      return false;
    }
  }

  // closure idempotence and insertion-order independence over random graphs
  int idempotent_cases = 0, order_cases = 0, attempts = 0;
  while ((idempotent_cases < 1000 || order_cases < 1000) && attempts < 6000) {
    ++attempts;
    std::size_t n = 3 + rng() % 3;
    std::vector<TimePointId> pts;
    for (std::size_t i = 0; i < n; ++i)
      pts.push_back(TimePointId::named("p" + std::to_string(i)));
    struct C {
      TimePointId a, b;
      RelationSet rel;
    };
    std::vector<C> constraints;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng() % 100 < 45) constraints.push_back({pts[i], pts[j], rand_rel()});

    ConstraintGraph g;
    for (const TimePointId& p : pts) g.add_node(p);
    for (const C& c : constraints) g.add_constraint(c.a, c.b, c.rel, {"e"});
    ClosureResult once = close(g);

    if (once.consistent) {
      ++idempotent_cases;
      ClosureResult twice = close(once.graph);
      if (!twice.consistent || twice.graph.edges != once.graph.edges) {
        why = "closing a closed network changed it";
        return false;
      }
    }

    std::vector<TimePointId> shuffled_pts = pts;
    std::shuffle(shuffled_pts.begin(), shuffled_pts.end(), rng);
    std::shuffle(constraints.begin(), constraints.end(), rng);
    ConstraintGraph h;
    for (const TimePointId& p : shuffled_pts) h.add_node(p);
    for (const C& c : constraints) h.add_constraint(c.a, c.b, c.rel, {"e"});
    ClosureResult other = close(h);
    ++order_cases;
    if (other.consistent != once.consistent) {
      why = "insertion order changed the verdict";
      return false;
    }
    if (once.consistent)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (once.graph.query(pts[i], pts[j]) !=
              other.graph.query(pts[i], pts[j])) {
            why = "insertion order changed a closed label";
            return false;
          }
  }
  if (idempotent_cases < 1000 || order_cases < 1000) {
    why = "could not draw 1000 usable random graphs";
    return false;
  }
  return true;
}

// ----- criterion 5: token targets resolve to the quoted words -----

bool crit5(std::string& why) {
  struct Quote {
    const char* name;
    const char* verb;
    const char* words;
  };
  const Quote cases[] = {
      {"ate.rtmml", "v1", "ate"},
      {"copperfield.rtmml", "v1", "had put"},
      {"saddam.rtmml", "v2", "had rejected"},
      {"wsj0533.rtmml", "v1", "had been tendered"},
  };
  for (const Quote& q : cases) {
    AnnotatedDocument doc = load(q.name, why);
    const VerbAnn* v = doc.find_verb(q.verb);
    if (!v) {
      why = std::string(q.name) + " lacks verb " + q.verb;
      return false;
    }
    std::string got;
    for (std::size_t idx : v->target.indices) {
      if (idx >= doc.tokens.size()) {
        why = std::string(q.name) + ": target index out of range";
        return false;
      }
      if (!got.empty()) got += ' ';
      got += doc.tokens[idx].text;
    }
    if (got != q.words) {
      why = std::string(q.name) + ": " + q.verb + " covers \"" + got +
            "\", expected \"" + q.words + "\"";
      return false;
    }
  }
  return true;
}

// ----- criterion 6: TimeML import stays weaker than hand annotation -----

bool crit6(std::string& why) {
  TimemlImport out = import_timeml(read_file(fixture("AP900815-0044.tml")));
  const VerbAnn* appeared = out.document.find_verb("ei1568");
  const VerbAnn* rejected = out.document.find_verb("ei1571");
  if (!appeared || !rejected) {
    why = "import lost a MAKEINSTANCE";
    return false;
  }
  if (appeared->se != RelationSet::gt() ||
      appeared->er != RelationSet::of(RelationSet::EQ | RelationSet::GT)) {
    why = "ei1568 does not carry se={>}, er={=,>}";
    return false;
  }
  if (rejected->se != RelationSet::gt() || rejected->er != RelationSet::lt()) {
    why = "ei1571 does not carry se={>}, er={<}";
    return false;
  }

  ClosureResult imported = close(build_graph(out.document));
  ClosureResult hand = load_closed("saddam.rtmml", why);
  if (!imported.consistent || !hand.consistent) {
    why = "a closure came back inconsistent";
    return false;
  }
  const char* native_ids[] = {"v1", "v2"};
  const char* import_ids[] = {"ei1568", "ei1571"};
  std::vector<TimePointId> native_pts{TimePointId::sd()};
  std::vector<TimePointId> import_pts{TimePointId::sd()};
  for (int k = 0; k < 2; ++k)
    for (PointSel sel : {PointSel::s, PointSel::e, PointSel::r}) {
      native_pts.push_back(TimePointId::verb(native_ids[k], sel));
      import_pts.push_back(TimePointId::verb(import_ids[k], sel));
    }
  for (std::size_t i = 0; i < native_pts.size(); ++i)
    for (std::size_t j = i + 1; j < native_pts.size(); ++j) {
      RelationSet tight = query_relation(hand, native_pts[i], native_pts[j]);
      RelationSet loose =
          query_relation(imported, import_pts[i], import_pts[j]);
      if (!tight.subset_of(loose)) {
        why = "imported label for (" + import_pts[i].name() + ", " +
              import_pts[j].name() + ") is tighter than the hand annotation";
        return false;
      }
    }
  return true;
}

// ----- criterion 7: CLI exit codes and serialization round-trip -----

int run_cli(const std::string& args) {
  std::string cmd = "\"" + g_cli + "\" " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

bool crit7(std::string& why) {
  struct Call {
    std::string args;
    int expected;
  };
  const Call calls[] = {
      {"validate " + fixture("ate.rtmml"), 0},
      {"close --json " + fixture("copperfield.rtmml"), 0},
      {"order " + fixture("saddam.rtmml"), 0},
      {"query " + fixture("ate.rtmml") + " v1.e t1", 0},
      {"from-timeml " + fixture("AP900815-0044.tml"), 0},
      {"validate " + fixture("dangling.rtmml"), 1},
      {"validate " + fixture("malformed.rtmml"), 2},
      {"query " + fixture("ate.rtmml") + " v9.e SD", 2},
      {"close " + fixture("cycle.rtmml"), 3},
      {"order " + fixture("cycle.rtmml"), 3},
  };
  for (const Call& c : calls) {
    int got = run_cli(c.args);
    if (got != c.expected) {
      why = "`rtmml " + c.args + "` exited " + std::to_string(got) +
            ", expected " + std::to_string(c.expected);
      return false;
    }
  }

  const char* names[] = {"ate.rtmml",      "ate_link.rtmml", "copperfield.rtmml",
                         "saddam.rtmml",   "wsj0533.rtmml",  "example4.rtmml",
                         "cycle.rtmml",    "dangling.rtmml"};
  for (const char* name : names) {
    ParseResult first = parse_rtmml(read_file(fixture(name)));
    if (!first.report.ok()) {
      why = std::string(name) + " failed to parse";
      return false;
    }
    std::string xml = serialize_rtmml(first.document);
    ParseResult second = parse_rtmml(xml);
    if (!second.report.ok() || !(second.document == first.document) ||
        serialize_rtmml(second.document) != xml) {
      why = std::string(name) + " does not round-trip";
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--cli") g_cli = argv[++i];
    else if (arg == "--fixtures") g_fixtures = argv[++i];
  }
  if (g_cli.empty() || g_fixtures.empty()) {
    std::fprintf(stderr,
                 "usage: rtmml_acceptance --cli <rtmml-binary> --fixtures "
                 "<fixture-dir>\n");
    return 2;
  }

  struct Criterion {
    const char* title;
    bool (*check)(std::string&);
  };
  const Criterion criteria[] = {
      {"worked examples close to the documented orderings", crit1},
      {"tense table round-trips and covers all 13 arrangements", crit2},
      {"closure agrees with exhaustive enumeration on random networks",
       crit3},
      {"algebra and closure law suites hold", crit4},
      {"token targets resolve to the quoted words", crit5},
      {"TimeML import maps tense/aspect and is never tighter", crit6},
      {"CLI exit codes and serialization round-trips", crit7},
  };

  int failures = 0;
  for (std::size_t i = 0; i < std::size(criteria); ++i) {
    std::string why;
    bool ok = false;
    try {
      ok = criteria[i].check(why);
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (ok) {
      std::printf("PASS criterion %zu: %s\n", i + 1, criteria[i].title);
    } else {
      std::printf("FAIL criterion %zu: %s — %s\n", i + 1, criteria[i].title,
                  why.c_str());
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
