#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"
#include "rtmml/errors.hpp"
#include "rtmml/graph.hpp"
#include "rtmml/parser.hpp"
#include "rtmml/reasoner.hpp"
#include "rtmml/timeml.hpp"

namespace {

// Exit codes are a stable contract: data problems, unreadable input and
// temporal inconsistency are distinguishable in scripts.
constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUnreadable = 2;
constexpr int kInconsistent = 3;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return !in.bad();
}

struct Loaded {
  rtmml::AnnotatedDocument doc;
  rtmml::ValidationReport report;
};

int load(const std::string& path, bool strict, Loaded& out) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read " << path << "\n";
    return kUnreadable;
  }
  try {
    rtmml::ParseResult parsed = rtmml::parse_rtmml(text, {strict});
    out.doc = std::move(parsed.document);
    out.report = std::move(parsed.report);
  } catch (const rtmml::XmlError& e) {
    std::cerr << "error: " << path << ": " << e.what() << "\n";
    return kUnreadable;
  }
  out.report.merge(rtmml::validate(out.doc));
  return kOk;
}

int cmd_validate(const std::string& path, bool strict, bool json) {
  Loaded l;
  if (int rc = load(path, strict, l)) return rc;
  if (json)
    std::cout << l.report.to_json() << "\n";
  else
    std::cerr << l.report.to_text();
  return l.report.ok() ? kOk : kInvalid;
}

// Shared front half of close/order/query: a valid document closed over.
// Inconsistency found while the graph is still being assembled is reported
// in the same shape as one found during closure.
int closed_document(const std::string& path, Loaded& l,
                    rtmml::ClosureResult& res, bool want_json) {
  if (int rc = load(path, false, l)) return rc;
  if (!l.report.ok()) {
    std::cerr << l.report.to_text();
    return kInvalid;
  }
  try {
    res = rtmml::close(rtmml::build_graph(l.doc));
  } catch (const rtmml::InconsistencyError& e) {
    if (want_json) {
      nlohmann::ordered_json j;
      j["consistent"] = false;
      j["verdict"] = "inconsistent";
      j["conflict"] = {{"points", {e.point_a, e.point_b}},
                       {"provenance", e.provenance}};
      std::cout << j.dump(2) << "\n";
    }
    std::cerr << "inconsistent: " << e.what() << "\n";
    return kInconsistent;
  }
  return kOk;
}

int cmd_close(const std::string& path, const std::string& format) {
  Loaded l;
  rtmml::ClosureResult res;
  if (int rc = closed_document(path, l, res, format == "json")) return rc;
  if (format == "dot")
    std::cout << res.graph.to_dot();
  else
    std::cout << res.to_json() << "\n";
  if (!res.consistent) {
    const auto& t = res.conflict->triangle;
    std::cerr << "inconsistent: conflict among " << t[0].name() << ", "
              << t[1].name() << ", " << t[2].name() << "\n";
    return kInconsistent;
  }
  return kOk;
}

int cmd_order(const std::string& path, bool include_times, bool json) {
  Loaded l;
  rtmml::ClosureResult res;
  if (int rc = closed_document(path, l, res, json)) return rc;
  if (!res.consistent) {
    std::cerr << "inconsistent: no order can be reported\n";
    return kInconsistent;
  }
  rtmml::EventOrderReport report = rtmml::event_order(res, include_times);
  if (json)
    std::cout << report.to_json() << "\n";
  else
    std::cout << report.to_text();
  return kOk;
}

int cmd_query(const std::string& path, const std::string& a,
              const std::string& b, bool json) {
  Loaded l;
  rtmml::ClosureResult res;
  if (int rc = closed_document(path, l, res, json)) return rc;
  if (!res.consistent) {
    std::cerr << "inconsistent: labels are meaningless\n";
    return kInconsistent;
  }
  auto resolve = [&](const std::string& name,
                     const rtmml::TimePointId*& out_point) {
    for (const rtmml::TimePointId& node : res.graph.nodes)
      if (node.name() == name) {
        out_point = &node;
        return true;
      }
    std::cerr << "error: unknown point '" << name
              << "' (use SD, <verbid>.s|e|r, or a time expression id)\n";
    return false;
  };
  const rtmml::TimePointId* pa = nullptr;
  const rtmml::TimePointId* pb = nullptr;
  if (!resolve(a, pa) || !resolve(b, pb)) return kUnreadable;
  rtmml::RelationSet rel = res.graph.query(*pa, *pb);
  if (json) {
    nlohmann::ordered_json j;
    j["a"] = pa->name();
    j["b"] = pb->name();
    j["rel"] = rel.to_string();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << rel.to_string() << "\n";
  }
  return kOk;
}

int cmd_from_timeml(const std::string& path) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read " << path << "\n";
    return kUnreadable;
  }
  try {
    rtmml::TimemlImport imp = rtmml::import_timeml(text);
    std::cerr << imp.report.to_text();
    std::cout << rtmml::serialize_rtmml(imp.document);
  } catch (const rtmml::XmlError& e) {
    std::cerr << "error: " << path << ": " << e.what() << "\n";
    return kUnreadable;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RTMML: parse, validate and reason over Reichenbach tense "
               "model markup"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");

  std::string path, format = "json", point_a, point_b;
  bool strict = false, include_times = false;

  CLI::App* validate = app.add_subcommand("validate", "check a document");
  validate->add_option("file", path, "RTMML file")->required();
  validate->add_flag("--strict", strict,
                     "unknown markup is an error; targets must be ordered");
  validate->fallthrough();

  CLI::App* close = app.add_subcommand("close", "print the closed network");
  close->add_option("file", path, "RTMML file")->required();
  close->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "dot"}));
  close->fallthrough();

  CLI::App* order = app.add_subcommand("order", "report the event order");
  order->add_option("file", path, "RTMML file")->required();
  order->add_flag("--include-times", include_times,
                  "order time expressions along with events");
  order->fallthrough();

  CLI::App* query =
      app.add_subcommand("query", "closed label between two points");
  query->add_option("file", path, "RTMML file")->required();
  query->add_option("a", point_a, "first point")->required();
  query->add_option("b", point_b, "second point")->required();
  query->fallthrough();

  CLI::App* from_timeml =
      app.add_subcommand("from-timeml", "convert a TimeML document");
  from_timeml->add_option("file", path, "TimeML file")->required();
  from_timeml->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(validate)) return cmd_validate(path, strict, json);
    if (app.got_subcommand(close)) return cmd_close(path, format);
    if (app.got_subcommand(order)) return cmd_order(path, include_times, json);
    if (app.got_subcommand(query))
      return cmd_query(path, point_a, point_b, json);
    if (app.got_subcommand(from_timeml)) return cmd_from_timeml(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnreadable;
  }
  return kOk;
}
