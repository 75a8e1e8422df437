#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cantorlab/canjar.hpp"
#include "cantorlab/error.hpp"
#include "cantorlab/json_io.hpp"
#include "cantorlab/suites.hpp"

using namespace cantorlab;

namespace {

struct Options {
  std::uint64_t seed = 1;
  std::uint64_t window = 64;
  std::uint32_t depth = 5;
  std::string out;
  std::string format = "json";
  std::string thread = "zero";
  bool timing = false;

  std::string name;
  std::string name_file;
  std::string names;
  std::string clopen;
  std::string p = "1";
  std::string set = "all";
  std::string schedule;
  std::string cuts;
  std::uint64_t n = 0;
  std::uint64_t big_n = 0;
  std::vector<std::string> eps;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Usage, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Name the_name(const Options& o) {
  if (!o.name_file.empty()) return parse_name(read_file(o.name_file));
  if (o.name.empty()) throw Error(ErrorKind::Usage, "a name is required (--name or --name-file)");
  return parse_name(o.name);
}

std::vector<Name> the_names(const Options& o) {
  if (o.names.empty()) throw Error(ErrorKind::Usage, "--names <file> is required");
  return parse_name_list(read_file(o.names));
}

std::vector<Rational> the_eps(const Options& o) {
  if (o.eps.empty()) return default_certificate_eps();
  std::vector<Rational> out;
  for (const auto& e : o.eps) out.push_back(parse_rational(e));
  return out;
}

Json bc_json(const Options& o) {
  Schedule s = Schedule::parse(o.schedule);
  auto x = EventuallyPeriodicSet::parse(o.set);
  auto v = borel_cantelli_verdict(s, x);
  Json j;
  j["kind"] = std::string(to_string(v.kind()));
  j["rule"] = v.rule();
  if (v.kind() == BorelCantelliVerdict::Kind::Divergent) {
    Json rows = Json::array();
    for (int e : {5, 10, 20}) {
      Json row;
      row["eps"] = to_json(Dyadic::pow2(-e));
      row["N"] = v.certificate(Dyadic::pow2(-e));
      rows.push_back(row);
    }
    j["certificates"] = rows;
  } else {
    Json rows = Json::array();
    for (std::uint64_t n = 0; n <= 8; ++n) {
      Json row;
      row["n"] = n;
      row["tail_bound"] = to_json(v.tail_bound(n));
      rows.push_back(row);
    }
    j["tail_bounds"] = rows;
  }
  return j;
}

Json full_json(const Options& o) {
  auto v = is_full(the_name(o), Clopen::parse(o.p), EventuallyPeriodicSet::parse(o.set), the_eps(o), o.window);
  Json j = to_json(v);
  return j;
}

/// Wraps a single computation as a report.
Json single(const std::string& command, Json input, Json result) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  j["input"] = std::move(input);
  j["result"] = std::move(result);
  return j;
}

Json inputs(const Options& o, std::initializer_list<std::string_view> keys) {
  Json j;
  for (auto k : keys) {
    if (k == "name") j["name"] = o.name_file.empty() ? o.name : "@" + o.name_file;
    if (k == "clopen") j["clopen"] = o.clopen;
    if (k == "p") j["p"] = o.p;
    if (k == "set") j["set"] = o.set;
    if (k == "schedule") j["schedule"] = o.schedule;
    if (k == "thread") j["thread"] = o.thread;
    if (k == "n") j["n"] = o.n;
    if (k == "N") j["N"] = o.big_n;
    if (k == "names") j["names"] = o.names;
    if (k == "cuts") j["cuts"] = o.cuts;
    if (k == "window") j["window"] = o.window;
  }
  return j;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error(ErrorKind::Usage, "cannot write '" + o.out + "'");
  f << text;
}

void emit_json(const Options& o, const Json& j) { emit(o, j.dump(2) + "\n"); }

int run_suites(const Options& o, const std::string& id) {
  SuiteConfig cfg;
  cfg.seed = o.seed;
  cfg.window = o.window;
  cfg.depth = o.depth;
  cfg.thread = ProfiniteThread::parse(o.thread);
  cfg.timing = o.timing;
  if (o.window == 0) throw Error(ErrorKind::Usage, "--window must be positive");
  if (o.format != "json" && o.format != "tsv") throw Error(ErrorKind::Usage, "--format must be json or tsv");
  std::vector<std::string> ids;
  if (id == "all") {
    ids = suite_ids();
  } else {
    ids.push_back(id);
  }
  std::vector<SuiteReport> reports;
  for (const auto& s : ids) reports.push_back(run_suite(s, cfg));
  bool pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
  if (o.format == "tsv") {
    std::string text;
    for (const auto& r : reports) text += r.to_tsv();
    emit(o, text);
  } else if (reports.size() == 1) {
    emit_json(o, reports[0].to_json());
  } else {
    Json j;
    j["schema"] = 1;
    j["pass"] = pass;
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    j["reports"] = arr;
    emit_json(o, j);
  }
  for (const auto& r : reports)
    std::cerr << r.suite << ": " << (r.passed() ? "pass" : "FAIL") << " (" << r.cases.size() - r.failures() << "/"
              << r.cases.size() << ")\n";
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact workbench for names of subsets of omega over the Cantor measure algebra"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key = value file mirroring the flags");
  Options o;
  app.add_option("--seed", o.seed, "seed for randomized cases");
  app.add_option("--window", o.window, "sampling window");
  app.add_option("--depth", o.depth, "largest n for the partition suite");
  app.add_option("--out", o.out, "write the report to this file");
  app.add_option("--format", o.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
  app.add_option("--thread", o.thread, "zero | int:<a> | digits:<d1>,<d2>,...");
  app.add_flag("--timing", o.timing, "include wall time in suite reports");

  auto name_opts = [&](CLI::App* c) {
    c->add_option("--name", o.name, "name as JSON or inline expression");
    c->add_option("--name-file", o.name_file, "file holding the name");
  };

  std::function<int()> action;

  std::string suite_id;
  auto* suite = app.add_subcommand("suite", "run a verification suite");
  suite->add_option("id", suite_id, "suite id or 'all'")->required();
  suite->callback([&] { action = [&] { return run_suites(o, suite_id); }; });

  auto* eval = app.add_subcommand("eval", "evaluate one name");
  eval->require_subcommand(1);
  {
    auto* c = eval->add_subcommand("tail-limit", "lim measure(M(k) & B)");
    name_opts(c);
    c->add_option("--clopen", o.clopen)->required();
    c->callback([&] {
      action = [&] {
        emit_json(o, single("eval tail-limit", inputs(o, {"name", "clopen", "window"}),
                            to_json(tail_limit(the_name(o), Clopen::parse(o.clopen), o.window))));
        return 0;
      };
    });
    c = eval->add_subcommand("density", "density of the Solovay measure");
    name_opts(c);
    c->callback([&] {
      action = [&] {
        emit_json(o, single("eval density", inputs(o, {"name"}), to_json(density(the_name(o)))));
        return 0;
      };
    });
    c = eval->add_subcommand("nu", "limit of measure(M(k)) along the thread");
    name_opts(c);
    c->callback([&] {
      action = [&] {
        emit_json(o, single("eval nu", inputs(o, {"name", "thread", "window"}),
                            to_json(nu(the_name(o), ProfiniteThread::parse(o.thread), o.window))));
        return 0;
      };
    });
    c = eval->add_subcommand("bc", "Borel-Cantelli classification");
    c->add_option("--schedule", o.schedule)->required();
    c->add_option("--set", o.set);
    c->callback([&] {
      action = [&] {
        emit_json(o, single("eval bc", inputs(o, {"schedule", "set"}), bc_json(o)));
        return 0;
      };
    });
    c = eval->add_subcommand("full", "fullness of a name below p along X");
    name_opts(c);
    c->add_option("--p", o.p);
    c->add_option("--set", o.set);
    c->add_option("--eps", o.eps, "certificate thresholds (rationals)");
    c->callback([&] {
      action = [&] {
        emit_json(o, single("eval full", inputs(o, {"name", "p", "set"}), full_json(o)));
        return 0;
      };
    });
  }

  auto* solovay = app.add_subcommand("solovay", "Solovay measure computations");
  solovay->require_subcommand(1);
  {
    auto* c = solovay->add_subcommand("density", "density of a name");
    name_opts(c);
    c->callback([&] {
      action = [&] {
        emit_json(o, single("solovay density", inputs(o, {"name"}), to_json(density(the_name(o)))));
        return 0;
      };
    });
    c = solovay->add_subcommand("tail-limit", "lim measure(M(k) & B)");
    name_opts(c);
    c->add_option("--clopen", o.clopen)->required();
    c->callback([&] {
      action = [&] {
        emit_json(o, single("solovay tail-limit", inputs(o, {"name", "clopen", "window"}),
                            to_json(tail_limit(the_name(o), Clopen::parse(o.clopen), o.window))));
        return 0;
      };
    });
    c = solovay->add_subcommand("partition", "the 2^n pattern names of length n");
    c->add_option("--n", o.n)->required();
    c->callback([&] {
      action = [&] {
        Json arr = Json::array();
        for (const auto& m : partition_family(static_cast<std::uint32_t>(o.n))) {
          Json e;
          e["name"] = to_json(m);
          e["density"] = to_json(unconditional_density(m));
          arr.push_back(e);
        }
        emit_json(o, single("solovay partition", inputs(o, {"n"}), arr));
        return 0;
      };
    });
  }

  auto* bc = app.add_subcommand("bc", "independent fresh blocks");
  bc->require_subcommand(1);
  {
    auto* c = bc->add_subcommand("verdict", "convergence of the schedule sum over X");
    c->add_option("--schedule", o.schedule)->required();
    c->add_option("--set", o.set);
    c->callback([&] {
      action = [&] {
        emit_json(o, single("bc verdict", inputs(o, {"schedule", "set"}), bc_json(o)));
        return 0;
      };
    });
    c = bc->add_subcommand("prefix-join", "measure of the join over n < k <= N in X");
    c->add_option("--schedule", o.schedule)->required();
    c->add_option("--set", o.set);
    c->add_option("--n", o.n);
    c->add_option("--N", o.big_n)->required();
    c->callback([&] {
      action = [&] {
        Name m = fresh_independent(Schedule::parse(o.schedule));
        Json r;
        r["measure"] = to_json(prefix_join_measure(m, EventuallyPeriodicSet::parse(o.set), o.n, o.big_n));
        emit_json(o, single("bc prefix-join", inputs(o, {"schedule", "set", "n", "N"}), r));
        return 0;
      };
    });
  }

  auto* ap1 = app.add_subcommand("ap1", "diagonalize a decreasing chain of names");
  ap1->add_option("--names", o.names, "file with one name per line or a JSON array")->required();
  ap1->callback([&] {
    action = [&] {
      auto res = ap1_diagonalize(the_names(o), ProfiniteThread::parse(o.thread), o.window);
      const auto& rep = res.report;
      Json r;
      r["name"] = to_json(res.name);
      Json limits = Json::array(), near = Json::array(), below = Json::array(), values = Json::array();
      for (const auto& l : rep.limits) limits.push_back(to_json(l));
      for (const auto& u : rep.near) near.push_back(u.to_string());
      for (const auto& b : rep.below) below.push_back(to_json(b));
      for (const auto& v : rep.window_values) values.push_back(to_json(v));
      r["limits"] = limits;
      r["near"] = near;
      r["common"] = rep.common.to_string();
      r["cuts"] = rep.cuts;
      r["below"] = below;
      r["window_values"] = values;
      r["segment"] = rep.segment;
      r["final_value"] = to_json(rep.final_value);
      r["note"] = rep.note;
      emit_json(o, single("ap1", inputs(o, {"names", "thread", "window"}), r));
      return 0;
    };
  });

  auto* canjar = app.add_subcommand("canjar", "fullness, C_n membership and splicing");
  canjar->require_subcommand(1);
  {
    auto* c = canjar->add_subcommand("full", "fullness of a name below p along X");
    name_opts(c);
    c->add_option("--p", o.p);
    c->add_option("--set", o.set);
    c->add_option("--eps", o.eps, "certificate thresholds (rationals)");
    c->callback([&] {
      action = [&] {
        emit_json(o, single("canjar full", inputs(o, {"name", "p", "set"}), full_json(o)));
        return 0;
      };
    });
    c = canjar->add_subcommand("cn", "compare the join outside X with measure(p) - 1/(n+1)");
    name_opts(c);
    c->add_option("--p", o.p);
    c->add_option("--n", o.n)->required();
    c->add_option("--set", o.set);
    c->add_option("--N", o.big_n)->required();
    c->callback([&] {
      action = [&] {
        auto v = cn_check(the_name(o), Clopen::parse(o.p), o.n, EventuallyPeriodicSet::parse(o.set), o.big_n);
        emit_json(o, single("canjar cn", inputs(o, {"name", "p", "n", "set", "N"}), to_json(v)));
        return 0;
      };
    });
    c = canjar->add_subcommand("splice", "splice names along an interval partition");
    c->add_option("--cuts", o.cuts)->required();
    c->add_option("--names", o.names)->required();
    c->callback([&] {
      action = [&] {
        IntervalPartition part = IntervalPartition::parse(o.cuts);
        auto es = the_names(o);
        Name e = splice(part, es);
        Json r;
        r["name"] = to_json(e);
        Json below = Json::array();
        for (const auto& m : es) below.push_back(to_json(leq_name(e, m, o.window)));
        r["below"] = below;
        emit_json(o, single("canjar splice", inputs(o, {"cuts", "names", "window"}), r));
        return 0;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return action ? action() : 2;
  } catch (const Error& e) {
    Json j;
    j["error"] = e.what();
    j["kind"] = std::string(to_string(e.kind()));
    std::cout << j.dump(2) << "\n";
    return e.kind() == ErrorKind::Usage ? 2 : 1;
  } catch (const std::exception& e) {
    Json j;
    j["error"] = e.what();
    j["kind"] = "Internal";
    std::cout << j.dump(2) << "\n";
    return 1;
  }
}
