#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bvass/error.hpp"
#include "bvass/explore.hpp"
#include "bvass/log.hpp"
#include "bvass/model.hpp"
#include "bvass/oracle.hpp"
#include "bvass/semilinear.hpp"

namespace {

// Stable process exit codes.
enum ExitStatus {
  kOk = 0,
  kUsage = 1,
  kInput = 2,
  kNegative = 3,
  kResourceLimit = 4,
  kValidation = 5,
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw bvass::Error("cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

bvass::Bvass load_model(const std::string& path) { return bvass::Bvass::parse(read_input(path)); }

bvass::SemilinearPresentation load_presentation(const std::string& path) {
  const std::string text = read_input(path);
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && text[start] == '{') {
    return bvass::SemilinearPresentation::from_json(text);
  }
  return bvass::SemilinearPresentation::from_text(text);
}

void write_output(const std::string& out_path, const std::string& payload) {
  if (out_path.empty() || out_path == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    throw bvass::Error("cannot write '" + out_path + "'");
  }
  file << payload;
}

struct ExploreOptions {
  std::string order = "fifo";
  std::size_t max_nodes = 100'000;
  bool validate = false;
  bool stats = false;
};

void add_explore_flags(CLI::App* cmd, ExploreOptions& opts) {
  cmd->add_option("--order", opts.order, "worklist order")
      ->check(CLI::IsMember({"fifo", "lifo"}));
  cmd->add_option("--max-nodes", opts.max_nodes, "node cap for the exploration");
  cmd->add_flag("--validate", opts.validate, "re-check the exploration conditions");
  cmd->add_flag("--stats", opts.stats, "print exploration statistics to stderr");
}

bvass::ExploreConfig to_config(const ExploreOptions& opts) {
  bvass::ExploreConfig cfg;
  cfg.order = opts.order == "lifo" ? bvass::ExploreConfig::Order::Lifo
                                   : bvass::ExploreConfig::Order::Fifo;
  cfg.max_nodes = opts.max_nodes;
  cfg.validate = opts.validate;
  return cfg;
}

void print_stats(const bvass::Exploration& e) {
  const bvass::ExploreStats& st = e.stats();
  std::cerr << "nodes=" << st.nodes_created << " accelerations=" << st.accelerations
            << " cycles=" << st.cycles_enumerated << " redundant=" << st.redundancy_hits
            << '\n';
}

int run_reach(const std::string& file, const ExploreOptions& opts, bool json,
              const std::string& out_path) {
  const bvass::Bvass model = load_model(file);
  const bvass::ExploreResult result = bvass::explore(model, to_config(opts));
  if (opts.stats) print_stats(result.exploration);
  if (opts.validate) {
    const auto issues = bvass::validate_exploration(result.exploration, model);
    for (const bvass::ValidationIssue& issue : issues) {
      std::cerr << "validation: node " << issue.node << " condition " << issue.condition
                << ": " << issue.detail << '\n';
    }
    if (!issues.empty()) return kValidation;
  }
  write_output(out_path, json ? result.presentation.to_json() + "\n"
                              : result.presentation.to_text());
  return kOk;
}

int run_member(const std::string& file, const std::string& state, std::int64_t x, std::int64_t y,
               const std::string& from) {
  const bvass::Bvass model = load_model(file);
  bvass::SemilinearPresentation presentation;
  if (!from.empty()) {
    presentation = load_presentation(from);
    if (!presentation.model_hash().empty() && presentation.model_hash() != model.content_hash()) {
      BVASS_LOG_WARN("presentation hash does not match the model file");
    }
  } else {
    presentation = bvass::explore(model).presentation;
  }
  if (x < 0 || y < 0) {
    std::cout << "not reachable (points of the reachability set are nonnegative)\n";
    return kNegative;
  }
  const bvass::Configuration config{bvass::StateId{state}, bvass::NVec2{x, y}};
  const auto index = presentation.member_config(config);
  if (!index) {
    std::cout << "not reachable\n";
    return kNegative;
  }
  const bvass::LinearSetEntry& entry = presentation.entries()[*index];
  std::ostringstream line;
  line << "reachable via linear " << entry.state.name << " : " << entry.base.x << ' '
       << entry.base.y;
  for (bvass::NVec2 g : entry.periods.generators()) {
    line << " ; " << g.x << ' ' << g.y;
  }
  std::cout << line.str() << '\n';
  return kOk;
}

int run_oracle(const std::string& file, std::int64_t box, bool json) {
  const bvass::Bvass model = load_model(file);
  const bvass::BoxReachResult result = bvass::bounded_reach(model, box);
  if (json) {
    nlohmann::ordered_json doc;
    doc["box"] = result.box;
    doc["saturated"] = result.saturated;
    doc["configs"] = nlohmann::ordered_json::array();
    for (const bvass::Configuration& c : result.configs) {
      doc["configs"].push_back({c.state.name, c.point.x, c.point.y});
    }
    std::cout << doc.dump() << '\n';
  } else {
    for (const bvass::Configuration& c : result.configs) {
      std::cout << c.state.name << ' ' << c.point.x << ' ' << c.point.y << '\n';
    }
  }
  return kOk;
}

int run_check(const std::string& file, std::int64_t box, std::int64_t box_max,
              const std::string& from, const ExploreOptions& opts) {
  const bvass::Bvass model = load_model(file);

  nlohmann::ordered_json doc;
  doc["model_hash"] = model.content_hash();
  bool ok = true;

  bvass::SemilinearPresentation presentation;
  if (!from.empty()) {
    presentation = load_presentation(from);
    doc["validation"] = {{"skipped", "presentation loaded from file"}};
  } else {
    const bvass::ExploreResult result = bvass::explore(model, to_config(opts));
    if (opts.stats) print_stats(result.exploration);
    presentation = result.presentation;
    auto issues = bvass::validate_exploration(result.exploration, model);
    auto list = nlohmann::ordered_json::array();
    for (const bvass::ValidationIssue& issue : issues) {
      list.push_back({{"node", issue.node},
                      {"condition", issue.condition},
                      {"detail", issue.detail}});
    }
    ok = ok && issues.empty();
    doc["validation"] = {{"violations", std::move(list)}};
  }

  const bvass::SoundnessReport soundness =
      bvass::check_soundness(presentation, model, box, box_max);
  {
    auto entries = nlohmann::ordered_json::array();
    for (const bvass::SoundnessEntry& e : soundness.entries) {
      entries.push_back(
          {{"state", e.config.state.name},
           {"point", {e.config.point.x, e.config.point.y}},
           {"status", e.status == bvass::WitnessStatus::Witnessed ? "witnessed" : "inconclusive"},
           {"box", e.box}});
    }
    doc["soundness"] = {{"checked", soundness.entries.size()},
                        {"inconclusive", soundness.inconclusive_count()},
                        {"notes", soundness.notes},
                        {"entries", std::move(entries)}};
    ok = ok && soundness.all_witnessed() && soundness.notes.empty();
  }

  const bvass::ClosureReport closure = bvass::check_post_closure(presentation, model, box);
  {
    auto violations = nlohmann::ordered_json::array();
    for (const bvass::ClosureViolation& v : closure.violations) {
      auto inputs = nlohmann::ordered_json::array();
      for (const bvass::Configuration& c : v.inputs) {
        inputs.push_back({c.state.name, c.point.x, c.point.y});
      }
      violations.push_back({{"rule", v.rule_index},
                            {"inputs", std::move(inputs)},
                            {"produced", {v.produced.state.name, v.produced.point.x,
                                          v.produced.point.y}}});
    }
    doc["post_closure"] = {{"violations", std::move(violations)}, {"notes", closure.notes}};
    ok = ok && closure.violations.empty() && closure.notes.empty();
  }

  doc["ok"] = ok;
  std::cout << doc.dump() << '\n';
  return ok ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reachability sets of 2-dimensional branching VASS as semilinear presentations"};
  app.require_subcommand(1);

  std::string file;
  std::string out_path;
  std::string from;
  std::string state;
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t box = 20;
  std::int64_t box_max = 160;
  bool json = false;
  ExploreOptions opts;

  CLI::App* reach = app.add_subcommand("reach", "compute the reachability-set presentation");
  reach->add_option("file", file, "model file")->required();
  reach->add_flag("--json", json, "canonical JSON output");
  reach->add_option("--out", out_path, "write the presentation to a file");
  add_explore_flags(reach, opts);

  CLI::App* member = app.add_subcommand("member", "decide membership of a configuration");
  member->add_option("file", file, "model file")->required();
  member->add_option("state", state, "state name")->required();
  member->add_option("x", x, "first coordinate")->required();
  member->add_option("y", y, "second coordinate")->required();
  member->add_option("--from", from, "load a presentation instead of computing one");

  CLI::App* oracle = app.add_subcommand("oracle", "dump box-bounded brute-force reachability");
  oracle->add_option("file", file, "model file")->required();
  oracle->add_option("--box", box, "box bound")->required();
  oracle->add_flag("--json", json, "JSON output");

  CLI::App* check = app.add_subcommand("check", "differential checks against the oracle");
  check->add_option("file", file, "model file")->required();
  check->add_option("--box", box, "differential box bound");
  check->add_option("--box-max", box_max, "largest witness-search box");
  check->add_option("--from", from, "check a stored presentation instead of computing one");
  add_explore_flags(check, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    return app.exit(ex) == 0 ? kOk : kUsage;
  }

  try {
    if (reach->parsed()) return run_reach(file, opts, json, out_path);
    if (member->parsed()) return run_member(file, state, x, y, from);
    if (oracle->parsed()) return run_oracle(file, box, json);
    if (check->parsed()) return run_check(file, box, box_max, from, opts);
  } catch (const bvass::ResourceLimitError& ex) {
    BVASS_LOG_ERROR(ex.what());
    return kResourceLimit;
  } catch (const bvass::ParseError& ex) {
    BVASS_LOG_ERROR(ex.what());
    return kInput;
  } catch (const bvass::Error& ex) {
    BVASS_LOG_ERROR(ex.what());
    return kInput;
  } catch (const std::exception& ex) {
    BVASS_LOG_ERROR("internal error: " << ex.what());
    return kUsage;
  }
  return kUsage;
}
