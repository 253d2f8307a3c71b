#include "bvass/semilinear.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "bvass/error.hpp"
#include "bvass/explore.hpp"

namespace bvass {

SemilinearPresentation::SemilinearPresentation(std::vector<LinearSetEntry> entries,
                                               std::string model_hash)
    : entries_(std::move(entries)), model_hash_(std::move(model_hash)) {
  std::sort(entries_.begin(), entries_.end());
  entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
}

std::optional<std::size_t> SemilinearPresentation::member_config(const Configuration& c) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const LinearSetEntry& entry = entries_[i];
    if (entry.state != c.state) continue;
    if (!cw_leq(entry.base, c.point)) continue;
    if (entry.periods.contains(c.point - entry.base)) return i;
  }
  return std::nullopt;
}

ConfigSet SemilinearPresentation::enumerate_box(std::int64_t k) const {
  ConfigSet out;
  for (const LinearSetEntry& entry : entries_) {
    const std::int64_t w = k - entry.base.x;
    const std::int64_t h = k - entry.base.y;
    if (w < 0 || h < 0) continue;
    const std::vector<char> table = entry.periods.box_table(w, h);
    for (std::int64_t y = 0; y <= h; ++y) {
      for (std::int64_t x = 0; x <= w; ++x) {
        if (table[static_cast<std::size_t>(y * (w + 1) + x)]) {
          out.insert(Configuration{entry.state, entry.base + NVec2{x, y}});
        }
      }
    }
  }
  return out;
}

std::string SemilinearPresentation::to_json() const {
  nlohmann::ordered_json doc;
  doc["model_hash"] = model_hash_;
  doc["reach"] = nlohmann::ordered_json::array();
  for (const LinearSetEntry& entry : entries_) {
    nlohmann::ordered_json item;
    item["state"] = entry.state.name;
    item["base"] = {entry.base.x, entry.base.y};
    auto periods = nlohmann::ordered_json::array();
    for (NVec2 g : entry.periods.generators()) {
      periods.push_back({g.x, g.y});
    }
    item["periods"] = std::move(periods);
    doc["reach"].push_back(std::move(item));
  }
  return doc.dump();
}

std::string SemilinearPresentation::to_text() const {
  std::ostringstream out;
  for (const LinearSetEntry& entry : entries_) {
    out << "linear " << entry.state.name << " : " << entry.base.x << ' ' << entry.base.y;
    for (NVec2 g : entry.periods.generators()) {
      out << " ; " << g.x << ' ' << g.y;
    }
    out << '\n';
  }
  return out.str();
}

SemilinearPresentation SemilinearPresentation::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("invalid JSON: ") + ex.what(), 1, 1);
  }
  try {
    std::vector<LinearSetEntry> entries;
    for (const auto& item : doc.at("reach")) {
      LinearSetEntry entry;
      entry.state = StateId{item.at("state").get<std::string>()};
      entry.base = NVec2{item.at("base").at(0).get<std::int64_t>(),
                         item.at("base").at(1).get<std::int64_t>()};
      std::vector<NVec2> gens;
      for (const auto& g : item.at("periods")) {
        gens.push_back(NVec2{g.at(0).get<std::int64_t>(), g.at(1).get<std::int64_t>()});
      }
      entry.periods = PeriodicSet(std::move(gens));
      entries.push_back(std::move(entry));
    }
    return SemilinearPresentation(std::move(entries),
                                  doc.value("model_hash", std::string()));
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("presentation schema mismatch: ") + ex.what(), 1, 1);
  } catch (const Error& ex) {
    throw ParseError(std::string("presentation value error: ") + ex.what(), 1, 1);
  }
}

SemilinearPresentation SemilinearPresentation::from_text(std::string_view text) {
  std::vector<LinearSetEntry> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream ls(line);
    std::string keyword;
    if (!(ls >> keyword)) continue;
    if (keyword != "linear") {
      throw ParseError("expected 'linear'", line_no, 1);
    }
    LinearSetEntry entry;
    std::string colon;
    std::int64_t bx = 0;
    std::int64_t by = 0;
    if (!(ls >> entry.state.name >> colon >> bx >> by) || colon != ":") {
      throw ParseError("malformed linear-set line", line_no, 1);
    }
    std::vector<NVec2> gens;
    std::string sep;
    while (ls >> sep) {
      std::int64_t gx = 0;
      std::int64_t gy = 0;
      if (sep != ";" || !(ls >> gx >> gy) || gx < 0 || gy < 0) {
        throw ParseError("malformed period list", line_no, 1);
      }
      gens.push_back(NVec2{gx, gy});
    }
    if (bx < 0 || by < 0) throw ParseError("negative base", line_no, 1);
    entry.base = NVec2{bx, by};
    entry.periods = PeriodicSet(std::move(gens));
    entries.push_back(std::move(entry));
  }
  return SemilinearPresentation(std::move(entries), std::string());
}

namespace {

bool entry_covers(const LinearSetEntry& cover, const LinearSetEntry& entry) {
  if (cover.state != entry.state) return false;
  if (!cover.periods.contains(entry.base - cover.base)) return false;
  return std::all_of(entry.periods.generators().begin(), entry.periods.generators().end(),
                     [&](NVec2 g) { return cover.periods.contains(g); });
}

}  // namespace

SemilinearPresentation assemble(const Exploration& e, const std::string& model_hash) {
  std::vector<LinearSetEntry> raw;
  for (const ExplorationNode& node : e.nodes()) {
    if (node.status == NodeStatus::Waiting) continue;
    raw.push_back(LinearSetEntry{node.label.q, node.label.z, node.label.p});
  }
  // Scan entries with componentwise-smaller bases first, so a covering entry
  // is already retained when its covered entries come up.
  std::sort(raw.begin(), raw.end(), [](const LinearSetEntry& a, const LinearSetEntry& b) {
    const std::int64_t wa = a.base.x + a.base.y;
    const std::int64_t wb = b.base.x + b.base.y;
    return std::tie(a.state, wa, a.base, a.periods) < std::tie(b.state, wb, b.base, b.periods);
  });
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());

  std::vector<LinearSetEntry> kept;
  for (const LinearSetEntry& entry : raw) {
    const bool covered = std::any_of(kept.begin(), kept.end(), [&](const LinearSetEntry& c) {
      return entry_covers(c, entry);
    });
    if (!covered) kept.push_back(entry);
  }
  return SemilinearPresentation(std::move(kept), model_hash);
}

}  // namespace bvass
