#include "bvass/accel.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "bvass/cone2d.hpp"
#include "bvass/error.hpp"

namespace bvass {

namespace {

// Folds new points into an incrementally reduced generator snapshot, keeping
// per(reduced) equal to per(all points seen). Reduction of a generating
// subset of a periodic set of N^2 always lands on its unique minimal
// generating set, so this matches a single final reduce of the full X.
// Membership is answered from one table over the batch's bounding box,
// recomputed only when a point gets absorbed as a new generator.
void absorb(std::vector<NVec2>& reduced, std::vector<NVec2> fresh) {
  std::sort(fresh.begin(), fresh.end());
  std::erase_if(fresh, [](NVec2 p) { return p.is_zero(); });
  if (fresh.empty()) return;

  std::int64_t w = 0;
  std::int64_t h = 0;
  for (NVec2 p : fresh) {
    w = std::max(w, p.x);
    h = std::max(h, p.y);
  }
  std::vector<char> table = PeriodicSet(reduced).box_table(w, h);
  bool changed = false;
  for (NVec2 p : fresh) {
    if (table[static_cast<std::size_t>(p.y * (w + 1) + p.x)]) continue;
    reduced.push_back(p);
    changed = true;
    table = PeriodicSet(reduced).box_table(w, h);
  }
  if (changed) {
    reduced = PeriodicSet(std::move(reduced)).reduced().generators();
  }
}

}  // namespace

AccelReport per_plus_report(std::span<const IVec2> z, AccelLimits limits) {
  std::vector<IVec2> steps(z.begin(), z.end());
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  std::erase_if(steps, [](IVec2 v) { return v.is_zero(); });

  std::set<NVec2> points;
  points.insert(NVec2{0, 0});
  // Only the last round's additions can produce unseen sums, so expanding the
  // frontier reproduces X u (X + Z) n N^2 round for round.
  std::vector<NVec2> frontier(points.begin(), points.end());
  std::vector<NVec2> reduced;

  AccelReport report;
  report.frontier_peak = 1;

  const auto stop_test = [&]() {
    const PeriodicSet snapshot(reduced);
    return std::all_of(steps.begin(), steps.end(),
                       [&](IVec2 v) { return shifted_inclusion(snapshot, v); });
  };

  bool done = steps.empty() || stop_test();
  while (!done) {
    if (report.rounds >= limits.max_rounds) {
      throw ResourceLimitError("acceleration fixpoint did not stabilize within " +
                               std::to_string(limits.max_rounds) + " rounds");
    }
    ++report.rounds;
    std::vector<NVec2> fresh;
    for (NVec2 x : frontier) {
      for (IVec2 v : steps) {
        const auto q = as_point(x.as_ivec() + v);
        if (q && !points.contains(*q)) fresh.push_back(*q);
      }
    }
    std::sort(fresh.begin(), fresh.end());
    fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
    points.insert(fresh.begin(), fresh.end());
    if (static_cast<std::int64_t>(points.size()) > limits.max_points) {
      throw ResourceLimitError("acceleration accumulated more than " +
                               std::to_string(limits.max_points) + " points");
    }
    report.frontier_peak = std::max<std::int64_t>(report.frontier_peak,
                                                  static_cast<std::int64_t>(points.size()));
    frontier = fresh;
    absorb(reduced, std::move(fresh));
    done = frontier.empty() ? true : stop_test();
  }

  report.result = PeriodicSet(reduced);
  report.cone_check = check_cone(steps, report.result);
  if (!report.cone_check) {
    throw std::logic_error("acceleration cone cross-check failed");
  }
  return report;
}

PeriodicSet per_plus(std::span<const IVec2> z, AccelLimits limits) {
  return per_plus_report(z, limits).result;
}

PeriodicSet accelerate(std::span<const IVec2> iterable, const PeriodicSet& p,
                       AccelLimits limits) {
  std::vector<IVec2> zs(iterable.begin(), iterable.end());
  for (NVec2 g : p.generators()) zs.push_back(g.as_ivec());
  return per_plus(zs, limits);
}

bool check_cone(std::span<const IVec2> z, const PeriodicSet& result) {
  std::vector<IVec2> dirs;
  for (NVec2 g : result.generators()) dirs.push_back(g.as_ivec());
  return clip_to_quadrant(span(dirs)) == conp_formula(z);
}

}  // namespace bvass
