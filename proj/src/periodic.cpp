#include "bvass/periodic.hpp"

#include <algorithm>
#include <ostream>

#include "bvass/error.hpp"

namespace bvass {

std::ostream& operator<<(std::ostream& os, IVec2 v) { return os << to_string(v); }
std::ostream& operator<<(std::ostream& os, NVec2 v) { return os << to_string(v); }

PeriodicSet::PeriodicSet(std::vector<NVec2> generators) : gens_(std::move(generators)) {
  std::erase_if(gens_, [](NVec2 g) { return g.is_zero(); });
  std::sort(gens_.begin(), gens_.end());
  gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
}

std::vector<char> PeriodicSet::box_table(std::int64_t w, std::int64_t h,
                                         std::int64_t cell_cap) const {
  const std::int64_t cells = detail::checked_mul(w + 1, h + 1);
  if (cells > cell_cap) {
    throw ResourceLimitError("membership grid of " + std::to_string(cells) +
                             " cells exceeds cap " + std::to_string(cell_cap));
  }
  const std::int64_t stride = w + 1;
  std::vector<char> reach(static_cast<std::size_t>(cells), 0);
  reach[0] = 1;
  // Generators are nonnegative and nonzero, so a row-major sweep is a
  // complete forward closure.
  for (std::int64_t py = 0; py <= h; ++py) {
    for (std::int64_t px = 0; px <= w; ++px) {
      if (!reach[static_cast<std::size_t>(py * stride + px)]) continue;
      for (NVec2 g : gens_) {
        const std::int64_t qx = px + g.x;
        const std::int64_t qy = py + g.y;
        if (qx <= w && qy <= h) {
          reach[static_cast<std::size_t>(qy * stride + qx)] = 1;
        }
      }
    }
  }
  return reach;
}

bool PeriodicSet::contains(NVec2 y, std::int64_t cell_cap) const {
  if (y.is_zero()) return true;
  if (gens_.empty()) return false;
  const std::vector<char> reach = box_table(y.x, y.y, cell_cap);
  return reach.back() != 0;
}

bool PeriodicSet::contains(IVec2 v, std::int64_t cell_cap) const {
  const auto p = as_point(v);
  return p.has_value() && contains(*p, cell_cap);
}

PeriodicSet operator+(const PeriodicSet& a, const PeriodicSet& b) {
  std::vector<NVec2> gens = a.gens_;
  gens.insert(gens.end(), b.gens_.begin(), b.gens_.end());
  return PeriodicSet(std::move(gens));
}

bool PeriodicSet::sem_equal(const PeriodicSet& other) const {
  for (NVec2 g : gens_) {
    if (!other.contains(g)) return false;
  }
  for (NVec2 g : other.gens_) {
    if (!contains(g)) return false;
  }
  return true;
}

PeriodicSet PeriodicSet::reduced() const {
  // gens_ is already in lexicographic order.
  std::vector<NVec2> kept = gens_;
  for (std::size_t i = 0; i < kept.size();) {
    std::vector<NVec2> rest;
    rest.reserve(kept.size() - 1);
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (j != i) rest.push_back(kept[j]);
    }
    if (PeriodicSet(std::move(rest)).contains(kept[i])) {
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return PeriodicSet(std::move(kept));
}

namespace {

struct MinSolutionSearch {
  std::span<const NVec2> gens;
  std::int64_t tx = 0;
  std::int64_t ty = 0;
  std::int64_t budget = 0;
  std::int64_t node_cap = 0;
  std::int64_t visited = 0;
  // Largest x (resp. y) contribution available from generator index i on.
  std::vector<std::int64_t> suffix_max_x;
  std::vector<std::int64_t> suffix_max_y;
  CoeffVector current;
  std::vector<CoeffVector> found;

  bool feasible(std::int64_t cx, std::int64_t cy) const { return cx >= tx && cy >= ty; }

  // Least number of further generators that could close the remaining deficit.
  std::int64_t lower_bound(std::size_t i, std::int64_t cx, std::int64_t cy) const {
    std::int64_t need = 0;
    if (cx < tx) {
      if (suffix_max_x[i] == 0) return budget + 1;
      need = std::max(need, (tx - cx + suffix_max_x[i] - 1) / suffix_max_x[i]);
    }
    if (cy < ty) {
      if (suffix_max_y[i] == 0) return budget + 1;
      need = std::max(need, (ty - cy + suffix_max_y[i] - 1) / suffix_max_y[i]);
    }
    return need;
  }

  void run(std::size_t i, std::int64_t used, std::int64_t cx, std::int64_t cy) {
    if (++visited > node_cap) {
      throw ResourceLimitError("minimal-solution enumeration exceeded " +
                               std::to_string(node_cap) + " search nodes");
    }
    if (feasible(cx, cy)) {
      found.push_back(current);
      return;  // any extension would be dominated
    }
    if (i == gens.size()) return;
    if (used + lower_bound(i, cx, cy) > budget) return;
    const NVec2 g = gens[i];
    const std::int64_t room = budget - used;
    for (std::int64_t c = 0; c <= room; ++c) {
      current[i] = c;
      const auto capped = [](std::int64_t base, std::int64_t count, std::int64_t step,
                             std::int64_t cap) {
        const __int128 s = static_cast<__int128>(base) + static_cast<__int128>(count) * step;
        return s >= cap ? cap : static_cast<std::int64_t>(s);
      };
      const std::int64_t nx = capped(cx, c, g.x, tx);
      const std::int64_t ny = capped(cy, c, g.y, ty);
      run(i + 1, used + c, nx, ny);
      if (feasible(nx, ny)) break;  // larger c at this index is dominated
    }
    current[i] = 0;
  }
};

bool dominates(const CoeffVector& a, const CoeffVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

}  // namespace

std::vector<CoeffVector> min_solutions(std::span<const NVec2> gens, IVec2 threshold,
                                       std::int64_t node_cap) {
  const std::int64_t tx = std::max<std::int64_t>(0, threshold.x);
  const std::int64_t ty = std::max<std::int64_t>(0, threshold.y);
  const CoeffVector zero(gens.size(), 0);
  if (tx == 0 && ty == 0) return {zero};

  bool x_possible = tx == 0;
  bool y_possible = ty == 0;
  for (NVec2 g : gens) {
    x_possible = x_possible || g.x > 0;
    y_possible = y_possible || g.y > 0;
  }
  if (!x_possible || !y_possible) return {};

  MinSolutionSearch search;
  search.gens = gens;
  search.tx = tx;
  search.ty = ty;
  // Every minimal solution satisfies sum n_i <= tx + ty: in any ordering of
  // its generator multiset, each step must strictly raise a capped prefix
  // coordinate, else that occurrence could be dropped.
  search.budget = tx + ty;
  search.node_cap = node_cap;
  search.suffix_max_x.assign(gens.size() + 1, 0);
  search.suffix_max_y.assign(gens.size() + 1, 0);
  for (std::size_t i = gens.size(); i-- > 0;) {
    search.suffix_max_x[i] = std::max(search.suffix_max_x[i + 1], gens[i].x);
    search.suffix_max_y[i] = std::max(search.suffix_max_y[i + 1], gens[i].y);
  }
  search.current = zero;
  search.run(0, 0, 0, 0);

  // Keep the componentwise antichain.
  std::vector<CoeffVector>& cands = search.found;
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::vector<CoeffVector> minimal;
  for (const CoeffVector& c : cands) {
    bool dominated = false;
    for (const CoeffVector& m : cands) {
      if (&m != &c && dominates(c, m) && m != c) {
        dominated = true;
        break;
      }
    }
    if (!dominated) minimal.push_back(c);
  }
  return minimal;
}

namespace {

IVec2 weighted_sum(std::span<const NVec2> gens, const CoeffVector& m) {
  IVec2 s{0, 0};
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (m[i] != 0) s = s + m[i] * gens[i].as_ivec();
  }
  return s;
}

}  // namespace

bool shifted_inclusion(const PeriodicSet& p, IVec2 z) {
  const std::span<const NVec2> gens(p.generators());
  for (const CoeffVector& m : min_solutions(gens, IVec2{0, 0} - z)) {
    if (!p.contains(weighted_sum(gens, m) + z)) return false;
  }
  return true;
}

std::vector<NVec2> basis(IVec2 v, const PeriodicSet& p) {
  const std::span<const NVec2> gens(p.generators());
  std::vector<NVec2> candidates;
  for (const CoeffVector& m : min_solutions(gens, IVec2{0, 0} - v)) {
    const IVec2 b = weighted_sum(gens, m) + v;
    candidates.push_back(*as_point(b));  // feasibility of m makes b nonnegative
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<NVec2> kept;
  for (NVec2 b : candidates) {
    bool covered = false;
    for (NVec2 k : kept) {
      if (p.contains(b - k)) {
        covered = true;
        break;
      }
    }
    if (!covered) kept.push_back(b);
  }
  return kept;
}

}  // namespace bvass
