#include "fairex/levels.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fairex {
namespace {

const Rational kZero{0};

// Smallest integer K >= 1 at which segment `s` stops counting toward the level.
// max: the segment counts while K * slope >= c, i.e. K >= ceil(c / slope).
// min: the segment counts while K * slope > c, i.e. K >= floor(c / slope) + 1.
Rational activation_rank(const Segment& s, const Rational& cost, LevelKind kind) {
  const Rational ratio = cost / s.slope;
  return kind == LevelKind::max ? ratio.ceil() : ratio.floor() + Rational(1);
}

}  // namespace

Level level(const AgentSpec& agent, std::size_t K, LevelKind kind) {
  if (K == 0) return Level{Rational(0), true};
  const Rational rank(static_cast<std::int64_t>(K));
  const auto segs = agent.benefit.segments();
  for (const Segment& s : segs) {
    // Slopes strictly decrease, so the counting segments form a prefix; the
    // level is the start of the first segment that does not count.
    const Rational scaled = rank * s.slope;
    const bool counts = kind == LevelKind::max ? scaled >= agent.cost : scaled > agent.cost;
    if (!counts) return Level{s.start, false};
  }
  return Level{segs.back().start, false};  // unreachable: the last slope is 0
}

Rational k_level(const AgentSpec& agent, std::size_t K) { return level(agent, K, LevelKind::max).value; }

Rational min_k_level(const AgentSpec& agent, std::size_t K) { return level(agent, K, LevelKind::min).value; }

Rational outside_closure(const AgentSpec& agent, const Rational& t) {
  if (t.sign() < 0) throw std::domain_error("outside closure at negative data amount " + t.str());
  const Rational sat = k_level(agent, 1);
  if (t >= sat) return agent.benefit.value(t);
  const Rational z = sat - t;
  return agent.benefit.value(sat) - agent.cost * z;
}

LevelTable LevelTable::from_agent(std::size_t owner, const AgentSpec& agent, LevelKind kind, std::size_t max_rank) {
  LevelTable table;
  table.owner_ = owner;
  table.kind_ = kind;
  table.max_rank_ = max_rank;
  if (max_rank == 0) return table;

  const auto segs = agent.benefit.segments();
  const Rational top(static_cast<std::int64_t>(max_rank));
  // The level at K is segs[p].start where p counts segments active at K.
  // Activation ranks are nondecreasing along the segments.
  std::size_t p = 0;
  table.steps_.push_back({1, Rational(0)});
  for (; p + 1 < segs.size(); ++p) {
    const Rational act = activation_rank(segs[p], agent.cost, kind);
    if (act > top) break;
    const std::size_t from = act.sign() <= 0 ? 1 : static_cast<std::size_t>(*std::max(act, Rational(1)).to_int64());
    if (table.steps_.back().from_rank == from) {
      table.steps_.back().value = segs[p + 1].start;
    } else {
      table.steps_.push_back({from, segs[p + 1].start});
    }
  }
  return table;
}

LevelTable LevelTable::from_values(std::size_t owner, std::span<const Rational> values, LevelKind kind) {
  LevelTable table;
  table.owner_ = owner;
  table.kind_ = kind;
  table.max_rank_ = values.size();
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k].sign() < 0)
      throw std::invalid_argument("level at K = " + std::to_string(k + 1) + " is negative (" + values[k].str() + ")");
    if (k > 0 && values[k] < values[k - 1])
      throw std::invalid_argument("levels decrease between K = " + std::to_string(k) + " and K = " +
                                  std::to_string(k + 1));
    if (table.steps_.empty() || table.steps_.back().value != values[k]) table.steps_.push_back({k + 1, values[k]});
  }
  return table;
}

const Rational& LevelTable::at(std::size_t K) const {
  if (K == 0 || steps_.empty()) return kZero;
  auto it = std::upper_bound(steps_.begin(), steps_.end(), K,
                             [](std::size_t k, const Step& s) { return k < s.from_rank; });
  return std::prev(it)->value;
}

std::vector<Rational> LevelTable::expanded() const {
  std::vector<Rational> out;
  out.reserve(max_rank_);
  for (std::size_t K = 1; K <= max_rank_; ++K) out.push_back(at(K));
  return out;
}

std::vector<LevelTable> level_tables(const Instance& inst, LevelKind kind) {
  std::vector<LevelTable> out;
  out.reserve(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i)
    out.push_back(LevelTable::from_agent(i, inst.agent(i), kind, inst.max_rank(i)));
  return out;
}

}  // namespace fairex
