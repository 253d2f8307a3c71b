#include "bvass/model.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

#include "bvass/error.hpp"

namespace bvass {

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Cursor over one input line, tracking the column for error messages.
struct LineScanner {
  std::string_view text;
  int line_no;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_no, static_cast<int>(pos) + 1);
  }

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos;
  }

  std::string name() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() && is_name_char(text[pos])) ++pos;
    if (pos == start) fail("expected a state name");
    return std::string(text.substr(start, pos - start));
  }

  std::int64_t integer() {
    skip_ws();
    const std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    const std::size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits) fail("expected an integer");
    std::int64_t value = 0;
    try {
      value = std::stoll(std::string(text.substr(start, pos - start)));
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
    return value;
  }
};

}  // namespace

Bvass::Bvass(std::set<StateId> states, std::vector<TransitionRule> rules)
    : states_(std::move(states)), rules_(std::move(rules)) {
  for (const TransitionRule& rule : rules_) {
    states_.insert(rule.output);
    states_.insert(rule.inputs.begin(), rule.inputs.end());
  }
  if (states_.empty()) {
    throw Error("a system needs at least one state");
  }
}

Bvass Bvass::parse(std::string_view text) {
  std::set<StateId> states;
  std::vector<TransitionRule> rules;

  int line_no = 0;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    const std::size_t eol = text.find('\n', offset);
    std::string_view raw =
        text.substr(offset, eol == std::string_view::npos ? std::string_view::npos : eol - offset);
    offset = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const std::size_t hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    LineScanner scan{raw, line_no};
    if (scan.at_end()) continue;

    const std::string directive = scan.name();
    if (directive == "states") {
      do {
        states.insert(StateId{scan.name()});
      } while (!scan.at_end());
    } else if (directive == "rule") {
      TransitionRule rule;
      rule.output = StateId{scan.name()};
      scan.expect('<');
      scan.expect('-');
      if (scan.peek() != ':') {
        rule.inputs.push_back(StateId{scan.name()});
        while (scan.peek() == ',') {
          scan.expect(',');
          StateId in{scan.name()};
          if (std::find(rule.inputs.begin(), rule.inputs.end(), in) != rule.inputs.end()) {
            scan.fail("duplicate input state '" + in.name + "'");
          }
          rule.inputs.push_back(std::move(in));
        }
      }
      scan.expect(':');
      rule.displacement.x = scan.integer();
      rule.displacement.y = scan.integer();
      if (!scan.at_end()) scan.fail("trailing input after rule");
      std::sort(rule.inputs.begin(), rule.inputs.end());
      rules.push_back(std::move(rule));
    } else {
      scan.pos = 0;
      scan.fail("unknown directive '" + directive + "'");
    }
  }

  if (states.empty() && rules.empty()) {
    throw ParseError("document declares no states and no rules", line_no, 1);
  }
  return Bvass(std::move(states), std::move(rules));
}

std::string Bvass::serialize() const {
  std::ostringstream out;
  out << "states";
  for (const StateId& s : states_) out << ' ' << s.name;
  out << '\n';
  for (const TransitionRule& rule : rules_) {
    out << "rule " << rule.output.name << " <- ";
    for (std::size_t i = 0; i < rule.inputs.size(); ++i) {
      if (i > 0) out << ',';
      out << rule.inputs[i].name;
    }
    if (!rule.inputs.empty()) out << ' ';
    out << ": " << rule.displacement.x << ' ' << rule.displacement.y << '\n';
  }
  return out.str();
}

std::string Bvass::content_hash() const {
  const std::string text = serialize();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i) {
    hex[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return hex;
}

bool Bvass::is_vass() const {
  return std::all_of(rules_.begin(), rules_.end(),
                     [](const TransitionRule& r) { return r.inputs.size() <= 1; });
}

namespace {

// Invokes fn once per set D of configurations with pairwise-distinct states
// whose state set equals `wanted`, drawing each from the pool.
void for_each_assignment(const std::map<StateId, std::vector<NVec2>>& pool,
                         const std::vector<StateId>& wanted, std::size_t index, IVec2 acc,
                         const std::function<void(IVec2)>& fn) {
  if (index == wanted.size()) {
    fn(acc);
    return;
  }
  const auto it = pool.find(wanted[index]);
  if (it == pool.end()) return;
  for (NVec2 p : it->second) {
    for_each_assignment(pool, wanted, index + 1, acc + p.as_ivec(), fn);
  }
}

std::map<StateId, std::vector<NVec2>> group_by_state(const ConfigSet& configs) {
  std::map<StateId, std::vector<NVec2>> pool;
  for (const Configuration& c : configs) pool[c.state].push_back(c.point);
  return pool;
}

}  // namespace

ConfigSet post_step(const Bvass& b, const ConfigSet& configs) {
  const auto pool = group_by_state(configs);
  ConfigSet out;
  for (const TransitionRule& rule : b.rules()) {
    for_each_assignment(pool, rule.inputs, 0, rule.displacement, [&](IVec2 y) {
      if (const auto p = as_point(y)) {
        out.insert(Configuration{rule.output, *p});
      }
    });
  }
  return out;
}

InstantiatedVass instantiate(const Bvass& b, const ConfigSet& f) {
  for (const Configuration& c : f) {
    if (!b.states().contains(c.state)) {
      throw Error("configuration state '" + c.state.name + "' is not a state of the system");
    }
  }
  const auto pool = group_by_state(f);
  std::set<VassTransition> transitions;
  for (const TransitionRule& rule : b.rules()) {
    for (const StateId& p : rule.inputs) {
      std::vector<StateId> others;
      for (const StateId& s : rule.inputs) {
        if (s != p) others.push_back(s);
      }
      for_each_assignment(pool, others, 0, rule.displacement, [&](IVec2 a) {
        transitions.insert(VassTransition{p, a, rule.output});
      });
    }
  }
  InstantiatedVass v;
  v.states = b.states();
  v.transitions.assign(transitions.begin(), transitions.end());
  v.source_configs = f;
  return v;
}

std::int64_t iteration_constant(const Bvass& b) {
  std::int64_t worst = 0;
  for (const TransitionRule& rule : b.rules()) {
    worst = std::max({worst, -rule.displacement.x, -rule.displacement.y});
  }
  return detail::checked_mul(static_cast<std::int64_t>(b.states().size()), worst);
}

}  // namespace bvass
