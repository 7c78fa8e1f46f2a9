#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "hdta/model_io.hpp"
#include "hdta/region_automaton.hpp"
#include "hdta/render.hpp"
#include "hdta/semantics.hpp"
#include "hdta/text_io.hpp"

namespace {

std::string sniff(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  std::string line, tok;
  while (std::getline(f, line)) {
    std::stringstream ss(line);
    if (ss >> tok && tok[0] != '#') return tok;
  }
  throw std::invalid_argument("empty model file " + path);
}

hdta::HDTA load_model(const std::string& path) {
  std::string kind = sniff(path);
  if (kind == "hdta") return hdta::load_hdta(path);
  if (kind == "hda") return hdta::hda_as_hdta(hdta::load_hda(path));
  if (kind == "ta") return hdta::translate_ta(hdta::load_ta(path));
  throw std::invalid_argument("unknown model kind '" + kind + "' in " + path);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string valuation_str(const hdta::Valuation& v) {
  std::string s = "(";
  for (const auto& [c, x] : v) {
    if (s.size() > 1) s += ",";
    s += c + "=" + hdta::to_string(x);
  }
  return s + ")";
}

struct Fuel {
  std::string actions = "4";
  std::string grid;
  std::string duration = "10";
  bool no_region_delays = false;

  hdta::ExploreFuel build() const {
    hdta::ExploreFuel f;
    f.max_actions = std::stoull(actions);
    f.max_duration = hdta::parse_rational(duration);
    if (!grid.empty()) f.delay_grid = hdta::parse_rational(grid);
    f.region_delays = !no_region_delays;
    return f;
  }
};

void add_fuel_flags(CLI::App* cmd, Fuel& fuel) {
  cmd->add_option("--fuel-actions", fuel.actions, "maximum action moves");
  cmd->add_option("--delay-grid", fuel.grid, "rational delay grid step");
  cmd->add_option("--max-duration", fuel.duration, "total duration bound");
  cmd->add_flag("--grid-only", fuel.no_region_delays, "drop region-boundary delay candidates");
}

int run(int argc, char** argv) {
  CLI::App app{"languages of higher-dimensional timed automata"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Fuel fuel;
  std::string format = "text";
  unsigned seed = 0;
  unsigned workers = 1;
  app.add_option("--format", format, "text|svg|records")->capture_default_str();
  app.add_option("--seed", seed, "simulation seed");
  app.add_option("--workers", workers, "exploration workers (1 = deterministic default)");

  std::string model1, model2, file1;

  auto* validate = app.add_subcommand("validate", "structural checks on a model file");
  validate->add_option("model", model1)->required();

  auto* simulate = app.add_subcommand("simulate", "seeded random run; streams moves");
  simulate->add_option("model", model1)->required();
  add_fuel_flags(simulate, fuel);

  auto* lang = app.add_subcommand("lang", "bounded language exploration");
  lang->add_option("model", model1)->required();
  add_fuel_flags(lang, fuel);

  auto* untime = app.add_subcommand("untime", "untiming of a tipomset file");
  untime->add_option("tipomset", file1)->required();

  auto* regions = app.add_subcommand("regions", "dump the region automaton");
  regions->add_option("model", model1)->required();

  auto* member = app.add_subcommand("member", "untimed membership of an ipomset");
  member->add_option("model", model1)->required();
  member->add_option("ipomset", file1)->required();

  auto* include = app.add_subcommand("include", "untimed language inclusion");
  include->add_option("model1", model1)->required();
  include->add_option("model2", model2)->required();
  include->add_flag("--down-closed", "compare down-closures instead (not default semantics)");

  auto* translate = app.add_subcommand("translate-ta", "timed automaton to HDTA");
  translate->add_option("ta", file1)->required();

  auto* render = app.add_subcommand("render-intervals", "Gantt diagram of a tipomset");
  render->add_option("tipomset", file1)->required();

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) {
    std::string kind = sniff(model1);
    std::vector<std::string> bad;
    if (kind == "hda")
      bad = hdta::validate(hdta::load_hda(model1));
    else if (kind == "ta")
      hdta::load_ta(model1);  // structural errors throw
    else
      bad = hdta::validate(hdta::load_hdta(model1));
    if (bad.empty()) {
      std::cout << "OK\n";
      return 0;
    }
    for (const auto& b : bad) std::cout << "VIOLATION " << b << "\n";
    return 1;
  }

  if (simulate->parsed()) {
    hdta::HDTA A = load_model(model1);
    auto f = fuel.build();
    std::mt19937 rng(seed);
    auto inits = hdta::initial_configurations(A);
    if (inits.empty()) {
      std::cout << "NO-RUN\n";
      return 1;
    }
    hdta::Path pi{inits[rng() % inits.size()], {}};
    long long M = A.max_constant();
    hdta::Rat elapsed(0);
    for (size_t step = 0; step < f.max_actions; ++step) {
      auto cands = hdta::detail::candidate_delays(pi.last().v, M, f.max_duration - elapsed, f);
      hdta::Rat d = cands[rng() % cands.size()];
      auto cd = hdta::delay_move(A, pi.last(), d);
      if (cd && d > hdta::Rat(0)) {
        pi.moves.push_back({hdta::MoveKind::Delay, d, 0, *cd});
        elapsed += d;
        std::cout << "move delay " << hdta::to_string(d) << " -> " << A.X.names[cd->cell] << " "
                  << valuation_str(cd->v) << "\n";
      }
      auto actions = hdta::enabled_action_moves(A, pi.last());
      if (actions.empty()) break;
      auto m = actions[rng() % actions.size()];
      std::cout << "move " << (m.kind == hdta::MoveKind::Start ? "start" : "finish") << " -> "
                << A.X.names[m.to.cell] << " " << valuation_str(m.to.v) << "\n";
      pi.moves.push_back(m);
    }
    std::cout << "accepting " << (A.accept.count(pi.last().cell) ? "yes" : "no") << "\n";
    std::cout << "ev " << hdta::tipomset_str(hdta::ev_path(A, pi)) << "\n";
    return 0;
  }

  if (lang->parsed()) {
    hdta::HDTA A = load_model(model1);
    auto res = hdta::explore(A, fuel.build());
    if (format == "records") std::cout << "hdta-lang 1\n";
    for (size_t i = 0; i < res.tipomsets.size(); ++i) {
      if (format == "records")
        std::cout << "tipomset " << hdta::tipomset_str(res.tipomsets[i]) << "\n"
                  << "idword " << hdta::idword_str(res.idwords[i]) << "\n";
      else
        std::cout << hdta::tipomset_str(res.tipomsets[i]) << "\n";
    }
    if (res.truncated) std::cerr << "warning: fuel exhausted; language under-approximated\n";
    return 0;
  }

  if (untime->parsed()) {
    auto t = hdta::parse_tipomset(slurp(file1));
    std::cout << hdta::ipomset_str(hdta::untime(t)) << "\n";
    return 0;
  }

  if (regions->parsed()) {
    hdta::HDTA A = load_model(model1);
    auto N = hdta::build_region_automaton(A);
    std::cout << "region-automaton " << A.name << " states " << N.size() << "\n";
    for (size_t i = 0; i < N.size(); ++i) {
      const auto& s = N.states[i];
      std::cout << "state " << i << " cell " << A.X.names[s.cell] << (s.primed ? " primed" : "")
                << " rep " << valuation_str(hdta::representative(s.r, A.max_constant()))
                << (N.initial.count(i) ? " initial" : "") << (N.accepting.count(i) ? " accepting" : "")
                << "\n";
    }
    for (size_t from = 0; from < N.size(); ++from)
      for (const auto& [l, to] : N.adj[from])
        std::cout << "trans " << from << " "
                  << (l < 0 ? std::string("id") : hdta::letter_str(N.letters[l])) << " " << to
                  << "\n";
    return 0;
  }

  if (member->parsed()) {
    hdta::HDTA A = load_model(model1);
    auto P = hdta::parse_ipomset(slurp(file1));
    bool yes = hdta::untimed_member(A, P);
    std::cout << (yes ? "MEMBER" : "NOT-MEMBER") << "\n";
    return yes ? 0 : 1;
  }

  if (include->parsed()) {
    hdta::HDTA A1 = load_model(model1);
    hdta::HDTA A2 = load_model(model2);
    auto r = hdta::untimed_inclusion(A1, A2);
    if (r.included) {
      std::cout << "INCLUDED\n";
      return 0;
    }
    std::cout << "NOT-INCLUDED " << hdta::ipomset_str(hdta::glue_sequence(*r.counterexample))
              << "\n";
    return 1;
  }

  if (translate->parsed()) {
    hdta::write_hdta(std::cout, hdta::translate_ta(hdta::load_ta(file1)));
    return 0;
  }

  if (render->parsed()) {
    auto t = hdta::parse_tipomset(slurp(file1));
    std::cout << (format == "svg" ? hdta::render_intervals_svg(t) : hdta::render_intervals_text(t));
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
