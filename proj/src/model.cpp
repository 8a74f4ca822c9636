#include "marshal/model.hpp"

#include <algorithm>
#include <numeric>

namespace marshal {

char side_letter(Side side) {
  switch (side) {
    case Side::North: return 'N';
    case Side::East: return 'E';
    case Side::South: return 'S';
    case Side::West: return 'W';
  }
  return '?';
}

Side side_from_letter(char c) {
  switch (c) {
    case 'N': case 'n': return Side::North;
    case 'E': case 'e': return Side::East;
    case 'S': case 's': return Side::South;
    case 'W': case 'w': return Side::West;
    default: throw std::invalid_argument(std::string("unknown access side '") + c + "'");
  }
}

std::string SideSet::letters() const {
  std::string out;
  for (Side s : kAllSides)
    if (has(s)) out.push_back(side_letter(s));
  return out;
}

SideSet SideSet::parse(const std::string& letters) {
  SideSet set;
  for (char c : letters) set.add(side_from_letter(c));
  return set;
}

BaySpec::BaySpec(int columns_, int rows_, int groups_, SideSet sides, int tiers_)
    : columns(columns_), rows(rows_), tiers(tiers_), groups(groups_),
      occupancy(static_cast<std::size_t>(std::max(0, columns_ * rows_ * tiers_)), kEmpty),
      access_sides(sides) {}

int BaySpec::load_count() const {
  return static_cast<int>(std::count_if(occupancy.begin(), occupancy.end(),
                                        [](Group g) { return g != kEmpty; }));
}

std::vector<std::pair<Side, StackPos>> BaySpec::access_stacks() const {
  std::vector<std::pair<Side, StackPos>> out;
  for (Side s : kAllSides) {
    if (!access_sides.has(s)) continue;
    switch (s) {
      case Side::North:
        for (int i = 0; i < columns; ++i) out.push_back({s, {i, 0}});
        break;
      case Side::East:
        for (int j = 0; j < rows; ++j) out.push_back({s, {columns - 1, j}});
        break;
      case Side::South:
        for (int i = 0; i < columns; ++i) out.push_back({s, {i, rows - 1}});
        break;
      case Side::West:
        for (int j = 0; j < rows; ++j) out.push_back({s, {0, j}});
        break;
    }
  }
  return out;
}

void BaySpec::validate() const {
  if (columns <= 0 || rows <= 0 || tiers <= 0)
    throw InvalidInstance("bay dimensions must be positive");
  if (groups <= 0 || groups > 250) throw InvalidInstance("group count must be in 1..250");
  if (occupancy.size() != static_cast<std::size_t>(slot_count()))
    throw InvalidInstance("occupancy size does not match bay dimensions");
  if (access_sides.empty()) throw InvalidInstance("bay needs at least one access side");
  for (int t = 0; t < tiers; ++t)
    for (int j = 0; j < rows; ++j)
      for (int i = 0; i < columns; ++i) {
        Group g = at(i, j, t);
        if (g > groups) throw InvalidInstance("load group exceeds G");
        if (t > 0 && g != kEmpty && at(i, j, t - 1) == kEmpty)
          throw InvalidInstance("load on a higher tier needs a load underneath");
      }
}

int WarehouseInstance::slot_count() const {
  int n = 0;
  for (const auto& b : bays) n += b.slot_count();
  return n;
}

int WarehouseInstance::load_count() const {
  int n = 0;
  for (const auto& b : bays) n += b.load_count();
  return n;
}

void WarehouseInstance::validate() const {
  if (warehouse_rows <= 0 || warehouse_cols <= 0)
    throw InvalidInstance("warehouse grid dimensions must be positive");
  if (static_cast<int>(bays.size()) != warehouse_rows * warehouse_cols)
    throw InvalidInstance("bay count must equal warehouse_rows * warehouse_cols");
  for (const auto& b : bays) {
    b.validate();
    if (b.groups != bays.front().groups) throw InvalidInstance("all bays must share G");
  }
}

LaneSet::LaneSet(std::vector<LaneSpec> lanes, int groups, std::vector<int> lane_distances,
                 bool lane_depth)
    : lanes_(std::move(lanes)), distances_(std::move(lane_distances)), groups_(groups),
      lane_depth_(lane_depth) {
  const std::size_t n = lanes_.size();
  if (distances_.empty()) distances_.assign(n * n, 0);
  if (distances_.size() != n * n)
    throw std::invalid_argument("lane distance table must be lane_count^2");
  capacities_.reserve(n);
  offsets_.reserve(n);
  for (const auto& l : lanes_) {
    if (l.capacity() <= 0) throw std::invalid_argument("lane capacity must be positive");
    offsets_.push_back(total_slots_);
    capacities_.push_back(l.capacity());
    total_slots_ += l.capacity();
    max_capacity_ = std::max(max_capacity_, l.capacity());
  }
}

std::shared_ptr<const LaneSet> LaneSet::without_distances(std::vector<LaneSpec> lanes,
                                                          int groups) {
  return std::make_shared<const LaneSet>(std::move(lanes), groups, std::vector<int>{});
}

std::shared_ptr<const LaneSet> LaneSet::from_capacities(const std::vector<int>& capacities,
                                                        int groups,
                                                        std::vector<int> lane_distances) {
  std::vector<LaneSpec> lanes;
  lanes.reserve(capacities.size());
  for (std::size_t s = 0; s < capacities.size(); ++s) {
    LaneSpec l;
    l.access_point = static_cast<int>(s);
    for (int t = 0; t < capacities[s]; ++t) l.cells.push_back({t, static_cast<int>(s)});
    lanes.push_back(std::move(l));
  }
  return std::make_shared<const LaneSet>(std::move(lanes), groups, std::move(lane_distances));
}

int sorted_prefix_length(std::span<const Group> deep_to_front) {
  const int n = static_cast<int>(deep_to_front.size());
  if (n == 0) return 0;
  int m = 1;
  while (m < n && deep_to_front[m] <= deep_to_front[m - 1]) ++m;
  return m;
}

int blocking_count(std::span<const Group> deep_to_front) {
  return static_cast<int>(deep_to_front.size()) - sorted_prefix_length(deep_to_front);
}

LaneConfiguration::LaneConfiguration(std::shared_ptr<const LaneSet> lanes,
                                     const std::vector<std::vector<Group>>& contents)
    : lanes_(std::move(lanes)) {
  const int n = lanes_->lane_count();
  if (static_cast<int>(contents.size()) != n)
    throw std::invalid_argument("contents must list every lane");
  slots_.assign(static_cast<std::size_t>(lanes_->total_slots()), kEmpty);
  sizes_.assign(static_cast<std::size_t>(n), 0);
  census_.assign(static_cast<std::size_t>(lanes_->groups()) + 1, 0);
  for (int s = 0; s < n; ++s) {
    const auto& c = contents[s];
    if (static_cast<int>(c.size()) > lanes_->capacity(s))
      throw std::invalid_argument("lane contents exceed capacity");
    for (std::size_t t = 0; t < c.size(); ++t) {
      if (c[t] == kEmpty || c[t] > lanes_->groups())
        throw std::invalid_argument("lane contents must hold groups in 1..G");
      slots_[lanes_->offset(s) + t] = c[t];
      ++census_[c[t]];
    }
    sizes_[s] = static_cast<std::uint16_t>(c.size());
    blocking_total_ += blocking_count(contents[s]);
  }
  census_[0] = lanes_->total_slots() - load_count();
}

int LaneConfiguration::load_count() const {
  return std::accumulate(sizes_.begin(), sizes_.end(), 0);
}

std::vector<std::vector<Group>> LaneConfiguration::to_vectors() const {
  std::vector<std::vector<Group>> out(static_cast<std::size_t>(lane_count()));
  for (int s = 0; s < lane_count(); ++s) {
    auto c = contents(s);
    out[s].assign(c.begin(), c.end());
  }
  return out;
}

int state_blocking(const LaneConfiguration& config) {
  int total = 0;
  for (int s = 0; s < config.lane_count(); ++s) total += blocking_count(config.contents(s));
  return total;
}

int move_distance(const LaneConfiguration& config, int from, int to) {
  const LaneSet& ls = config.lane_set();
  int d = ls.distance(from, to);
  if (ls.lane_depth())
    d += (config.capacity(from) - config.size(from)) +
         (config.capacity(to) - config.size(to) - 1);
  return d;
}

std::vector<Move> legal_moves(const LaneConfiguration& config) {
  std::vector<Move> moves;
  const int n = config.lane_count();
  for (int s = 0; s < n; ++s) {
    if (config.is_empty(s)) continue;
    for (int t = 0; t < n; ++t) {
      if (t == s || config.is_full(t)) continue;
      moves.push_back({s, t, config.size(s) - 1, config.size(t), move_distance(config, s, t)});
    }
  }
  return moves;
}

bool is_legal(const LaneConfiguration& config, const Move& m) {
  const int n = config.lane_count();
  if (m.from_lane < 0 || m.from_lane >= n || m.to_lane < 0 || m.to_lane >= n) return false;
  if (m.from_lane == m.to_lane) return false;
  if (config.is_empty(m.from_lane) || config.is_full(m.to_lane)) return false;
  return m.from_pos == config.size(m.from_lane) - 1 && m.to_pos == config.size(m.to_lane);
}

LaneConfiguration apply_move(const LaneConfiguration& config, const Move& m) {
  if (!is_legal(config, m))
    throw IllegalMove("illegal move " + std::to_string(m.from_lane) + " -> " +
                      std::to_string(m.to_lane));
  const LaneSet& ls = config.lane_set();
  LaneConfiguration next = config;
  const int from_before = blocking_count(config.contents(m.from_lane));
  const int to_before = blocking_count(config.contents(m.to_lane));
  const std::size_t src = static_cast<std::size_t>(ls.offset(m.from_lane) + m.from_pos);
  const std::size_t dst = static_cast<std::size_t>(ls.offset(m.to_lane) + m.to_pos);
  next.slots_[dst] = next.slots_[src];
  next.slots_[src] = kEmpty;
  --next.sizes_[m.from_lane];
  ++next.sizes_[m.to_lane];
  next.blocking_total_ += blocking_count(next.contents(m.from_lane)) - from_before +
                          blocking_count(next.contents(m.to_lane)) - to_before;
  return next;
}

StateKey state_key(const LaneConfiguration& config) {
  const auto& s = config.slots();
  return StateKey(reinterpret_cast<const char*>(s.data()), s.size());
}

const char* status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::Solved: return "solved";
    case SolveStatus::TimedOut: return "timeout";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

Solution make_solution(std::vector<Move> moves, SolveStats stats) {
  Solution sol;
  sol.status = SolveStatus::Solved;
  sol.k = static_cast<int>(moves.size());
  sol.total_distance = 0;
  for (const auto& m : moves) sol.total_distance += m.distance;
  sol.moves = std::move(moves);
  sol.stats = stats;
  return sol;
}

}  // namespace marshal
