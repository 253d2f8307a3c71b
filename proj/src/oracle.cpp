#include "bvass/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "bvass/error.hpp"

namespace bvass {

namespace {

// Dense bitset over [0..w] x [0..h]. Row-major, 64-bit words per row.
class BitGrid {
public:
  BitGrid() = default;
  BitGrid(std::int64_t w, std::int64_t h)
      : w_(w), h_(h), row_words_(static_cast<std::size_t>(w / 64 + 1)),
        bits_(row_words_ * static_cast<std::size_t>(h + 1), 0) {}

  std::int64_t width() const { return w_; }
  std::int64_t height() const { return h_; }

  bool test(std::int64_t x, std::int64_t y) const {
    if (x < 0 || y < 0 || x > w_ || y > h_) return false;
    return (row(y)[static_cast<std::size_t>(x / 64)] >> (x % 64)) & 1u;
  }

  void set(std::int64_t x, std::int64_t y) {
    row(y)[static_cast<std::size_t>(x / 64)] |= std::uint64_t{1} << (x % 64);
  }

  std::int64_t popcount() const {
    std::int64_t n = 0;
    for (std::uint64_t word : bits_) n += __builtin_popcountll(word);
    return n;
  }

  std::vector<NVec2> points() const {
    std::vector<NVec2> out;
    for (std::int64_t y = 0; y <= h_; ++y) {
      const std::uint64_t* r = row(y);
      for (std::size_t j = 0; j < row_words_; ++j) {
        std::uint64_t word = r[j];
        while (word) {
          const int bit = __builtin_ctzll(word);
          word &= word - 1;
          out.push_back(NVec2{static_cast<std::int64_t>(j) * 64 + bit, y});
        }
      }
    }
    return out;
  }

  // this |= (src shifted by (dx, dy)), clipped to this grid's extents.
  void or_shifted(const BitGrid& src, std::int64_t dx, std::int64_t dy) {
    for (std::int64_t sy = 0; sy <= src.h_; ++sy) {
      const std::int64_t ty = sy + dy;
      if (ty < 0 || ty > h_) continue;
      or_shifted_row(row(ty), src.row(sy), src.row_words_, dx);
    }
  }

  // this |= other (same geometry); reports whether any bit changed.
  bool merge(const BitGrid& other) {
    bool changed = false;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      const std::uint64_t next = bits_[i] | other.bits_[i];
      changed = changed || next != bits_[i];
      bits_[i] = next;
    }
    return changed;
  }

  // Bits of this that are clear in other, as a fresh grid.
  BitGrid minus(const BitGrid& other) const {
    BitGrid out(w_, h_);
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      out.bits_[i] = bits_[i] & ~other.bits_[i];
    }
    return out;
  }

  bool any() const {
    return std::any_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w != 0; });
  }

private:
  std::uint64_t* row(std::int64_t y) { return bits_.data() + row_words_ * static_cast<std::size_t>(y); }
  const std::uint64_t* row(std::int64_t y) const {
    return bits_.data() + row_words_ * static_cast<std::size_t>(y);
  }

  void or_shifted_row(std::uint64_t* dst, const std::uint64_t* src, std::size_t src_words,
                      std::int64_t dx) {
    const std::uint64_t top_mask =
        (w_ % 64 == 63) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (w_ % 64 + 1)) - 1);
    for (std::size_t j = 0; j < row_words_; ++j) {
      // Destination word j covers bits [64j, 64j+63]; gather from the source
      // bit range shifted back by dx.
      const std::int64_t lo = static_cast<std::int64_t>(j) * 64 - dx;
      const std::int64_t q = lo >= 0 ? lo / 64 : -((-lo + 63) / 64);
      const int r = static_cast<int>(lo - q * 64);
      std::uint64_t gathered = 0;
      if (q >= 0 && q < static_cast<std::int64_t>(src_words)) {
        gathered |= src[q] >> r;
      }
      if (r != 0 && q + 1 >= 0 && q + 1 < static_cast<std::int64_t>(src_words)) {
        gathered |= src[q + 1] << (64 - r);
      }
      if (j + 1 == row_words_) gathered &= top_mask;
      dst[j] |= gathered;
    }
  }

  std::int64_t w_ = 0;
  std::int64_t h_ = 0;
  std::size_t row_words_ = 1;
  std::vector<std::uint64_t> bits_;
};

// A <+> B on the given extents: for each point of the sparser operand, OR the
// other grid shifted by it.
BitGrid minkowski(const BitGrid& a, const BitGrid& b, std::int64_t w, std::int64_t h) {
  BitGrid out(w, h);
  const BitGrid& sparse = a.popcount() <= b.popcount() ? a : b;
  const BitGrid& dense = (&sparse == &a) ? b : a;
  for (NVec2 p : sparse.points()) {
    out.or_shifted(dense, p.x, p.y);
  }
  return out;
}

struct IndexedRule {
  std::vector<std::size_t> inputs;  // state indices, sorted
  IVec2 displacement;
  std::size_t output = 0;
};

// Round-based saturation engine over per-state bit grids. Each round
// propagates only configurations discovered since the previous round;
// assignments mixing at least one fresh configuration with arbitrary current
// ones are covered by one delta term per input slot.
class BoxEngine {
public:
  BoxEngine(const Bvass& b, std::int64_t k, std::int64_t config_cap)
      : box_(k), config_cap_(config_cap) {
    for (const StateId& s : b.states()) {
      state_index_[s] = states_.size();
      states_.push_back(s);
    }
    std::int64_t pad = 0;
    for (const TransitionRule& rule : b.rules()) {
      IndexedRule ir;
      for (const StateId& s : rule.inputs) ir.inputs.push_back(state_index_.at(s));
      ir.displacement = rule.displacement;
      ir.output = state_index_.at(rule.output);
      rules_.push_back(std::move(ir));
      pad = std::max({pad, -rule.displacement.x, -rule.displacement.y});
    }
    ext_ = box_ + pad;
    cur_.assign(states_.size(), BitGrid(box_, box_));
    processed_.assign(states_.size(), BitGrid(box_, box_));
  }

  void run() {
    // Seed: initial rules fire once, against the empty assignment.
    for (const IndexedRule& rule : rules_) {
      if (!rule.inputs.empty()) continue;
      const IVec2 a = rule.displacement;
      if (a.nonneg() && a.x <= box_ && a.y <= box_) {
        cur_[rule.output].set(a.x, a.y);
      }
    }
    while (true) {
      std::vector<BitGrid> delta;
      delta.reserve(states_.size());
      bool any = false;
      for (std::size_t s = 0; s < states_.size(); ++s) {
        delta.push_back(cur_[s].minus(processed_[s]));
        any = any || delta.back().any();
        processed_[s] = cur_[s];
      }
      if (!any) break;
      check_cap();
      for (const IndexedRule& rule : rules_) {
        if (rule.inputs.empty()) continue;
        apply_rule(rule, delta);
      }
    }
  }

  ConfigSet configs() const {
    ConfigSet out;
    for (std::size_t s = 0; s < states_.size(); ++s) {
      for (NVec2 p : cur_[s].points()) {
        out.insert(Configuration{states_[s], p});
      }
    }
    return out;
  }

private:
  void check_cap() const {
    std::int64_t total = 0;
    for (const BitGrid& g : cur_) total += g.popcount();
    if (total > config_cap_) {
      throw ResourceLimitError("bounded reachability exceeded " + std::to_string(config_cap_) +
                               " configurations at box " + std::to_string(box_));
    }
  }

  void apply_rule(const IndexedRule& rule, const std::vector<BitGrid>& delta) {
    for (std::size_t fresh_slot = 0; fresh_slot < rule.inputs.size(); ++fresh_slot) {
      if (!delta[rule.inputs[fresh_slot]].any()) continue;
      BitGrid acc(ext_, ext_);
      bool first = true;
      for (std::size_t slot = 0; slot < rule.inputs.size(); ++slot) {
        const BitGrid& factor =
            slot == fresh_slot ? delta[rule.inputs[slot]] : cur_[rule.inputs[slot]];
        if (first) {
          acc.or_shifted(factor, 0, 0);
          first = false;
        } else {
          acc = minkowski(acc, factor, ext_, ext_);
        }
      }
      cur_[rule.output].or_shifted(acc, rule.displacement.x, rule.displacement.y);
    }
  }

  std::int64_t box_;
  std::int64_t config_cap_;
  std::int64_t ext_ = 0;
  std::vector<StateId> states_;
  std::map<StateId, std::size_t> state_index_;
  std::vector<IndexedRule> rules_;
  std::vector<BitGrid> cur_;
  std::vector<BitGrid> processed_;
};

}  // namespace

BoxReachResult bounded_reach(const Bvass& b, std::int64_t k, std::int64_t config_cap) {
  BoxEngine engine(b, k, config_cap);
  engine.run();
  BoxReachResult result;
  result.configs = engine.configs();
  result.box = k;
  result.saturated = true;
  return result;
}

bool SoundnessReport::all_witnessed() const {
  return std::all_of(entries.begin(), entries.end(), [](const SoundnessEntry& e) {
    return e.status == WitnessStatus::Witnessed;
  });
}

std::size_t SoundnessReport::inconclusive_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const SoundnessEntry& e) {
        return e.status == WitnessStatus::Inconclusive;
      }));
}

SoundnessReport check_soundness(const SemilinearPresentation& s, const Bvass& b, std::int64_t k,
                                std::int64_t k_max) {
  SoundnessReport report;
  for (const Configuration& c : s.enumerate_box(k)) {
    report.entries.push_back(SoundnessEntry{c, WitnessStatus::Inconclusive, 0});
  }
  for (std::int64_t box = k; box <= k_max; box *= 2) {
    if (report.all_witnessed()) break;
    BoxReachResult reach;
    try {
      reach = bounded_reach(b, box);
    } catch (const ResourceLimitError& ex) {
      report.notes.push_back("box " + std::to_string(box) + ": " + ex.what());
      break;
    }
    for (SoundnessEntry& e : report.entries) {
      if (e.status == WitnessStatus::Inconclusive) {
        e.box = box;  // largest box tried
        if (reach.configs.contains(e.config)) {
          e.status = WitnessStatus::Witnessed;
        }
      }
    }
  }
  return report;
}

ClosureReport check_post_closure(const SemilinearPresentation& s, const Bvass& b, std::int64_t k) {
  ClosureReport report;

  std::size_t max_arity = 0;
  std::int64_t max_disp = 0;
  for (const TransitionRule& rule : b.rules()) {
    max_arity = std::max(max_arity, rule.inputs.size());
    max_disp = std::max({max_disp, rule.displacement.x, rule.displacement.y});
  }
  const std::int64_t y_max = detail::checked_add(
      detail::checked_mul(static_cast<std::int64_t>(std::max<std::size_t>(max_arity, 1)), k),
      max_disp);

  // Presentation membership over [0, y_max]^2 as one bit grid per state.
  std::map<StateId, BitGrid> members;
  for (const StateId& state : b.states()) members.emplace(state, BitGrid(y_max, y_max));
  for (const LinearSetEntry& entry : s.entries()) {
    const auto it = members.find(entry.state);
    if (it == members.end()) continue;  // entry for an unknown state never checked here
    const std::int64_t w = y_max - entry.base.x;
    const std::int64_t h = y_max - entry.base.y;
    if (w < 0 || h < 0) continue;
    const std::vector<char> table = entry.periods.box_table(w, h);
    for (std::int64_t y = 0; y <= h; ++y) {
      for (std::int64_t x = 0; x <= w; ++x) {
        if (table[static_cast<std::size_t>(y * (w + 1) + x)]) {
          it->second.set(entry.base.x + x, entry.base.y + y);
        }
      }
    }
  }

  // Box-restricted members per state, the assignment pool.
  std::map<StateId, std::vector<NVec2>> pool;
  for (const Configuration& c : s.enumerate_box(k)) pool[c.state].push_back(c.point);

  std::int64_t combos = 0;
  bool aborted = false;
  for (std::size_t rule_index = 0; rule_index < b.rules().size() && !aborted; ++rule_index) {
    const TransitionRule& rule = b.rules()[rule_index];
    const BitGrid& out_members = members.at(rule.output);
    std::vector<NVec2> chosen;

    const auto record = [&](IVec2 sum) {
      if (++combos > limits::kClosureComboCap) {
        report.notes.push_back("assignment enumeration exceeded " +
                               std::to_string(limits::kClosureComboCap) + " combinations");
        aborted = true;
        return;
      }
      if (!sum.nonneg() || out_members.test(sum.x, sum.y)) return;
      ClosureViolation violation;
      violation.rule_index = rule_index;
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        violation.inputs.push_back(Configuration{rule.inputs[i], chosen[i]});
      }
      violation.produced = Configuration{rule.output, *as_point(sum)};
      report.violations.push_back(std::move(violation));
    };

    const std::function<void(std::size_t, IVec2)> walk = [&](std::size_t index, IVec2 sum) {
      if (aborted) return;
      if (index == rule.inputs.size()) {
        record(sum);
        return;
      }
      const auto it = pool.find(rule.inputs[index]);
      if (it == pool.end()) return;
      if (index + 1 == rule.inputs.size()) {
        // Innermost slot without recursion.
        for (NVec2 p : it->second) {
          chosen.push_back(p);
          record(sum + p.as_ivec());
          chosen.pop_back();
          if (aborted) return;
        }
        return;
      }
      for (NVec2 p : it->second) {
        chosen.push_back(p);
        walk(index + 1, sum + p.as_ivec());
        chosen.pop_back();
      }
    };
    walk(0, rule.displacement);
  }
  return report;
}

std::set<NVec2> perp_oracle(std::span<const IVec2> z, std::int64_t k) {
  std::set<NVec2> seen;
  std::deque<NVec2> queue;
  seen.insert(NVec2{0, 0});
  queue.push_back(NVec2{0, 0});
  while (!queue.empty()) {
    const NVec2 at = queue.front();
    queue.pop_front();
    for (IVec2 v : z) {
      const auto next = as_point(at.as_ivec() + v);
      if (!next || next->x > k || next->y > k) continue;
      if (seen.insert(*next).second) queue.push_back(*next);
    }
  }
  return seen;
}

}  // namespace bvass
