/*
 * Copyright 2026 The mpts-synth Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// mpts-synth: command-line front end for the mpts library.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "mpts/analysis.hpp"
#include "mpts/automata.hpp"
#include "mpts/error.hpp"
#include "mpts/io.hpp"
#include "mpts/philosophers.hpp"
#include "mpts/product.hpp"
#include "mpts/sim.hpp"
#include "mpts/synthesis.hpp"

namespace {

using nlohmann::json;

enum ExitCode { kOk = 0, kNoController = 1, kInputError = 2, kResourceLimit = 3 };

struct Options {
  bool json = false;
  std::string model = "-";
  std::string controller;
  std::string ltl;
  std::string dra;  // HOA file used instead of translating --ltl
  std::string out;
  std::string dot;
  std::string ap;
  std::string example;
  double threshold = 0.0;
  std::size_t max_candidates = 10'000'000;
  std::size_t max_dra_states = 1'000'000;
  bool no_prune = false;
  std::size_t runs = 10'000;
  std::uint64_t seed = 1;
  std::uint64_t randomize = 0;
  unsigned threads = 0;
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  return mpts::read_text_file(path);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else mpts::write_text_file(path, text);
}

unsigned env_threads() {
  if (const char* v = std::getenv("MPTS_SYNTH_THREADS")) {
    try {
      const long n = std::stol(v);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    throw mpts::InputError("MPTS_SYNTH_THREADS must be a positive integer");
  }
  return 1;
}

mpts::Mpts load_valid_model(const Options& o) {
  mpts::Mpts m = mpts::parse_model(read_input(o.model));
  const auto diags = mpts::validate(m);
  if (!diags.empty()) throw mpts::InputError("invalid model: " + diags.front().kind + ": " + diags.front().message);
  return m;
}

mpts::Dra load_automaton(const Options& o, const mpts::Mpts& m) {
  if (!o.dra.empty()) return mpts::import_hoa(mpts::read_text_file(o.dra));
  if (o.ltl.empty()) throw mpts::InputError("one of --ltl or --dra is required");
  return mpts::ltl_to_dra(mpts::parse_ltl(o.ltl, m.atomic_props), m.atomic_props, {o.max_dra_states});
}

mpts::Controller load_controller(const Options& o, const mpts::Mpts& m) {
  mpts::Controller c = mpts::parse_controller(m, mpts::read_text_file(o.controller));
  const auto diags = mpts::validate_controller(m, c);
  if (!diags.empty()) throw mpts::InputError("invalid controller: " + diags.front().kind + ": " + diags.front().message);
  return c;
}

std::string fixed(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << v;
  return s.str();
}

std::string product_state_name(const mpts::ProductAutomaton& g, const mpts::Mpts& m, std::size_t s) {
  return "(" + m.states[g.states[s].model] + ", r" + std::to_string(g.states[s].dra) + ")";
}

int run_validate(const Options& o) {
  const mpts::Mpts m = mpts::parse_model(read_input(o.model));
  const auto diags = mpts::validate(m);
  if (o.json) {
    json j = {{"valid", diags.empty()}, {"states", m.num_states()}, {"diagnostics", json::array()}};
    for (const auto& d : diags) j["diagnostics"].push_back({{"kind", d.kind}, {"message", d.message}});
    std::cout << j.dump(2) << "\n";
  } else if (diags.empty()) {
    std::cout << "model is valid: " << m.num_states() << " states, " << m.num_players() << " players\n";
  } else {
    for (const auto& d : diags) std::cout << d.kind << ": " << d.message << "\n";
  }
  return diags.empty() ? kOk : kInputError;
}

int run_translate(const Options& o) {
  if (o.ltl.empty()) throw mpts::InputError("--ltl is required");
  std::vector<std::string> ap;
  mpts::Formula f = mpts::parse_ltl(o.ltl);
  if (o.ap.empty()) {
    const auto atoms = f.atoms();
    ap.assign(atoms.begin(), atoms.end());
  } else {
    std::stringstream s(o.ap);
    for (std::string p; std::getline(s, p, ',');)
      if (!p.empty()) ap.push_back(p);
    f = mpts::parse_ltl(o.ltl, ap);
  }
  const mpts::Dra dra = mpts::ltl_to_dra(f, ap, {o.max_dra_states});
  const std::string hoa = mpts::export_hoa(dra);
  if (o.json) {
    std::cout << json{{"states", dra.num_states}, {"pairs", dra.pairs.size()}, {"ap", dra.ap}, {"hoa", hoa}}.dump(2)
              << "\n";
    if (!o.out.empty() && o.out != "-") write_output(o.out, hoa);
  } else {
    write_output(o.out, hoa);
    if (!o.out.empty() && o.out != "-")
      std::cout << "wrote " << dra.num_states << "-state automaton with " << dra.pairs.size() << " Rabin pair(s) to "
                << o.out << "\n";
  }
  return kOk;
}

int run_check(const Options& o) {
  const mpts::Mpts m = load_valid_model(o);
  const mpts::Dra dra = load_automaton(o, m);
  const mpts::Controller c = load_controller(o, m);
  const auto r = mpts::check_satisfaction(mpts::apply_controller(m, c), dra);
  if (!o.dot.empty()) {
    std::vector<bool> highlight(r.product.size(), false);
    for (std::size_t s : r.accepting_states) highlight[s] = true;
    write_output(o.dot, mpts::product_to_dot(r.product, m, highlight));
  }
  if (o.json) {
    json acs = json::array();
    for (std::size_t s : r.accepting_states) acs.push_back(product_state_name(r.product, m, s));
    std::cout << json{{"probability", r.probability},
                      {"product_states", r.product.size()},
                      {"automaton_states", dra.num_states},
                      {"accepting_states", acs}}
                     .dump(2)
              << "\n";
  } else if (o.dot != "-") {
    std::cout << "probability " << fixed(r.probability) << "\n";
    std::cout << "product states " << r.product.size() << ", accepting component states "
              << r.accepting_states.size() << ":\n";
    for (std::size_t s : r.accepting_states) std::cout << "  " << product_state_name(r.product, m, s) << "\n";
  }
  return kOk;
}

int run_synthesize(const Options& o) {
  const mpts::Mpts m = load_valid_model(o);
  const mpts::Dra dra = load_automaton(o, m);
  mpts::SynthesisOptions opts;
  opts.max_candidates = o.max_candidates;
  opts.prune = !o.no_prune;
  env_threads();  // candidates are evaluated one at a time; the variable is only validated
  const auto r = mpts::synthesize(m, dra, o.threshold, opts);

  const char* status = r.status == mpts::SynthesisStatus::kFound           ? "found"
                       : r.status == mpts::SynthesisStatus::kNoController ? "none"
                                                                          : "candidate-limit";
  if (r.controller && !o.out.empty()) write_output(o.out, mpts::controller_to_json(m, *r.controller));
  if (o.json) {
    json j = {{"status", status},
              {"candidates", r.stats.candidates},
              {"partial_checks", r.stats.partial_checks},
              {"pruned", r.stats.pruned},
              {"automaton_states", r.stats.automaton_states}};
    if (r.controller) {
      j["probability"] = r.probability;
      j["controller"] = json::parse(mpts::controller_to_json(m, *r.controller));
    }
    std::cout << j.dump(2) << "\n";
  } else {
    if (r.controller) {
      std::cout << "controller found with probability " << fixed(r.probability) << " >= " << o.threshold << "\n";
      if (o.out.empty() || o.out == "-") {
        if (o.out.empty()) std::cout << mpts::controller_to_json(m, *r.controller);
      } else {
        std::cout << "wrote " << o.out << "\n";
      }
    } else if (r.status == mpts::SynthesisStatus::kNoController) {
      std::cout << "no controller reaches threshold " << o.threshold << "\n";
    } else {
      std::cout << "candidate limit " << o.max_candidates << " reached without a controller\n";
    }
    std::cout << "candidates " << r.stats.candidates << ", partial checks " << r.stats.partial_checks
              << ", pruned " << r.stats.pruned << ", automaton states " << r.stats.automaton_states << "\n";
  }
  switch (r.status) {
    case mpts::SynthesisStatus::kFound: return kOk;
    case mpts::SynthesisStatus::kNoController: return kNoController;
    default: return kResourceLimit;
  }
}

int run_simulate(const Options& o) {
  const mpts::Mpts m = load_valid_model(o);
  const mpts::Dra dra = load_automaton(o, m);
  const mpts::Controller c = load_controller(o, m);
  const mpts::ProductAutomaton g = mpts::build_product(mpts::apply_controller(m, c), dra);
  mpts::SimulationOptions opts;
  opts.threads = o.threads ? o.threads : env_threads();
  const auto e = mpts::estimate_probability(g, o.runs, o.seed, opts);
  if (o.json) {
    std::cout << json{{"estimate", e.probability}, {"standard_error", e.standard_error}, {"runs", e.runs},
                      {"accepted", e.accepted}, {"censored", e.censored}, {"seed", o.seed},
                      {"generator", e.generator}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "estimate " << fixed(e.probability) << " +/- " << fixed(e.standard_error) << " (" << e.runs
              << " runs, " << e.censored << " censored, seed " << o.seed << ", " << e.generator << ")\n";
  }
  return kOk;
}

int run_product(const Options& o) {
  const mpts::Mpts m = load_valid_model(o);
  const mpts::Dra dra = load_automaton(o, m);
  const mpts::Controller c = load_controller(o, m);
  const auto r = mpts::check_satisfaction(mpts::apply_controller(m, c), dra);
  std::vector<bool> highlight(r.product.size(), false);
  for (std::size_t s : r.accepting_states) highlight[s] = true;
  const std::string dot = mpts::product_to_dot(r.product, m, highlight);
  if (o.json) std::cout << json{{"states", r.product.size()}, {"dot", dot}}.dump(2) << "\n";
  else write_output(o.dot.empty() ? "-" : o.dot, dot);
  return kOk;
}

int run_example(const Options& o) {
  if (o.example != "philosophers") throw mpts::InputError("unknown example '" + o.example + "'");
  const auto params = o.randomize ? mpts::randomized_philosophers_parameters(o.randomize)
                                  : mpts::default_philosophers_parameters();
  write_output(o.out, mpts::model_to_json(mpts::generate_philosophers(params)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Controller synthesis for multi-agent probabilistic transition systems"};
  app.name("mpts-synth");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Machine-readable JSON report on stdout");

  auto model_opt = [&](CLI::App* sub) { sub->add_option("--model", o.model, "Model JSON file ('-' for stdin)"); };
  auto spec_opts = [&](CLI::App* sub) {
    sub->add_option("--ltl", o.ltl, "LTL formula");
    sub->add_option("--dra", o.dra, "HOA automaton to use instead of translating --ltl");
    sub->add_option("--max-automaton-states", o.max_dra_states, "Determinization state cap");
  };

  auto* validate = app.add_subcommand("validate", "Check a model against every well-formedness rule");
  model_opt(validate);

  auto* translate = app.add_subcommand("translate", "Translate LTL to a deterministic Rabin automaton (HOA)");
  translate->add_option("--ltl", o.ltl, "LTL formula")->required();
  translate->add_option("--ap", o.ap, "Comma-separated atomic propositions (default: atoms of the formula)");
  translate->add_option("--out", o.out, "Output HOA file (default stdout)");
  translate->add_option("--max-automaton-states", o.max_dra_states, "Determinization state cap");

  auto* check = app.add_subcommand("check", "Probability that a controlled model satisfies a formula");
  model_opt(check);
  check->add_option("--controller", o.controller, "Controller JSON file")->required();
  spec_opts(check);
  check->add_option("--dot", o.dot, "Write the product graph with accepting components highlighted");

  auto* synth = app.add_subcommand("synthesize", "Find a controller meeting a probability threshold");
  model_opt(synth);
  spec_opts(synth);
  synth->add_option("--threshold", o.threshold, "Probability threshold in [0, 1]")->required();
  synth->add_option("--out", o.out, "Controller JSON output file");
  synth->add_option("--max-candidates", o.max_candidates, "Cap on complete controllers evaluated");
  synth->add_flag("--no-prune", o.no_prune, "Evaluate every candidate without bounding partial controllers");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate of the satisfaction probability");
  model_opt(sim);
  sim->add_option("--controller", o.controller, "Controller JSON file")->required();
  spec_opts(sim);
  sim->add_option("--runs", o.runs, "Number of sampled runs")->check(CLI::PositiveNumber);
  sim->add_option("--seed", o.seed, "Generator seed");
  sim->add_option("--threads", o.threads, "Worker threads (default MPTS_SYNTH_THREADS or 1)");

  auto* product = app.add_subcommand("product", "Export the product of a controlled model and an automaton");
  model_opt(product);
  product->add_option("--controller", o.controller, "Controller JSON file")->required();
  spec_opts(product);
  product->add_option("--dot", o.dot, "DOT output file (default stdout)")->expected(0, 1);

  auto* example = app.add_subcommand("example", "Print a bundled example model as JSON");
  example->add_option("name", o.example, "Example name (philosophers)")->required();
  example->add_option("--out", o.out, "Output file (default stdout)");
  example->add_option("--randomize", o.randomize, "Draw the free probabilities from this seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kInputError;
  }

  try {
    if (*validate) return run_validate(o);
    if (*translate) return run_translate(o);
    if (*check) return run_check(o);
    if (*synth) return run_synthesize(o);
    if (*sim) return run_simulate(o);
    if (*product) return run_product(o);
    if (*example) return run_example(o);
  } catch (const mpts::ResourceLimitError& e) {
    std::cerr << "mpts-synth: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const mpts::InputError& e) {
    std::cerr << "mpts-synth: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "mpts-synth: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
