#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsq/table.hpp"

namespace rsq {

// Positions are 0-based offsets into a scan's row permutation; dumps print
// them 1-based to match the usual tabular convention.
struct Segment {
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive
  int region = 0;
};

inline bool segments_overlap(const Segment& a, const Segment& b) {
  // (a.first - b.last) * (a.last - b.first) <= 0, kept in signed arithmetic.
  auto x1 = static_cast<std::int64_t>(a.first);
  auto x2 = static_cast<std::int64_t>(a.last);
  auto y1 = static_cast<std::int64_t>(b.first);
  auto y2 = static_cast<std::int64_t>(b.last);
  return (x1 - y2) * (x2 - y1) <= 0;
}

// One queue of a cascade successive task: all segments share the same value
// under the layer's attribute. Segments are ordered by (region, first) and
// pairwise disjoint.
struct TaskQueue {
  int parent = -1;  // index of the parent task in the previous layer
  ValueId value = kStar;
  std::vector<Segment> segs;
  int region_count = 0;
  std::size_t member_count() const;
};

// One layer of the task tree: queues spanning >= 2 regions are tasks,
// single-region queues are semi-tasks.
struct Layer {
  std::vector<TaskQueue> tasks;
  std::vector<TaskQueue> semis;
  bool empty() const { return tasks.empty(); }
  std::size_t member_count() const;
};

struct RefineStats {
  std::size_t rows_sorted = 0;   // members touched by this refinement
  std::size_t queue_splits = 0;  // tasks that produced >= 2 child queues
  std::size_t semi_drops = 0;    // child queues moved to semi-tasks
  bool changed() const { return queue_splits > 0 || semi_drops > 0; }
};

// Drives one squeeze scan over a fixed row subset: decision-sorts the rows,
// forms the root demarcation task and refines it attribute by attribute with
// per-segment counting sorts. Positions saved in earlier layers stay valid as
// member sets because later sorts only permute within existing segments.
class Scanner {
 public:
  Scanner(const Table& t, std::vector<std::size_t> rows);
  explicit Scanner(const Table& t);

  const Layer& current() const { return current_; }
  const std::vector<Region>& regions() const { return regions_; }
  const std::vector<std::size_t>& perm() const { return perm_; }
  std::size_t position_of(std::size_t table_row) const { return ad_[table_row]; }
  int region_of_pos(std::size_t pos) const { return pos_region_[pos]; }
  const std::string& region_label(int r) const { return regions_[r].label; }

  // Refines every task of the current layer under attr; single-region child
  // queues move to semi-tasks (check&remove).
  RefineStats refine(int attr);

  // Residual task members (used for the boundary split), as table rows.
  std::vector<std::size_t> task_member_rows() const;

  // Relative indiscernible information of attr against the current layer,
  // in the ordered-pair convention (caller halves for the unordered count).
  // Computed from a value/region histogram without mutating the scan.
  std::uint64_t indiscernible_info_ordered(int attr) const;

  // Ordered-pair count of indiscernible-but-region-demarcated pairs held in
  // the current layer itself.
  std::uint64_t layer_info_ordered() const;

  // Queue member counts that task_entropy is computed from (tasks' child
  // queues under attr, including would-be semis).
  std::vector<std::size_t> queue_sizes_under(int attr) const;

 private:
  void init(std::vector<std::size_t> rows);

  const Table& t_;
  std::vector<std::size_t> perm_;        // position -> table row
  std::vector<std::size_t> ad_;          // table row -> position
  std::vector<int> pos_region_;          // position -> region index
  std::vector<Region> regions_;
  Layer current_;
  std::vector<std::size_t> scratch_rows_;
  std::vector<std::size_t> scratch_cnt_;
};

// A task reduced to sorted member keys per region, the common currency for
// intersections (keys are scan positions when both operands share a frame,
// or raw row ids for set-based layers).
struct MemberTask {
  struct Part {
    int region = 0;
    std::vector<std::size_t> keys;  // sorted ascending
  };
  std::vector<Part> parts;
  int region_count() const { return static_cast<int>(parts.size()); }
};

std::vector<MemberTask> layer_members(const Layer& layer,
                                      const std::vector<std::size_t>& perm,
                                      bool keys_are_rows);

struct Intersection {
  std::vector<MemberTask> groups;
  std::size_t comparisons = 0;  // segment-pair tests across all walks
  bool empty() const { return groups.empty(); }
};

// Exhaustive operand-subtask-pair match: every pair of subtasks sharing
// members in >= 2 regions contributes one group. Linear merge walk per pair.
Intersection intersect_all_pairs(const std::vector<MemberTask>& a,
                                 const std::vector<MemberTask>& b);

// Reported match: each subtask of `saved` pairs with the first subtask of
// `fresh` yielding a >= 2-region overlap; both leave the pool. Emptiness
// agrees with the exhaustive match.
Intersection intersect_reported(const std::vector<MemberTask>& saved,
                                const std::vector<MemberTask>& fresh);

// True iff a refinement changed nothing (no queue split, no semi removal).
inline bool tasks_equal(const RefineStats& s) { return !s.changed(); }

// Text dumps (positions printed 1-based, regions by their decision label).
std::string layer_to_text(const Layer& layer,
                          const std::vector<std::string>& region_labels);
std::string intersection_to_text(const Intersection& ist,
                                 const std::vector<std::string>& region_labels);

}  // namespace rsq
