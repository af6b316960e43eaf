#include "sweep.hpp"

#include "maxdisk/geom.hpp"

#include <algorithm>
#include <cmath>
#include <memory_resource>
#include <queue>
#include <set>
#include <string>

namespace maxdisk::detail {

namespace {

enum EventKind : std::uint8_t { kEnd = 0, kCross = 1, kStart = 2 };

struct StaticEvent {
  double y;
  EventKind kind;
  std::int32_t id;
};

struct CrossEvent {
  double y;
  std::int32_t left;
  std::int32_t right;
  bool operator>(const CrossEvent& o) const noexcept {
    if (y != o.y) return y > o.y;
    if (left != o.left) return left > o.left;
    return right > o.right;
  }
};

class Sweep {
 public:
  Sweep(const std::vector<Curve>& curves, const std::vector<std::uint8_t>& colour,
        std::array<bool, 2> self_cross, std::array<bool, 2> locate, SweepListener& listener,
        SweepStats* stats)
      : curves_(curves),
        colour_(colour),
        self_cross_(self_cross),
        locate_(locate),
        listener_(listener),
        stats_(stats),
        status_(Order{this}, &pool_),
        only_{Status(Order{this}, &pool_), Status(Order{this}, &pool_)},
        where_(curves.size()),
        where_only_(curves.size()),
        alive_(curves.size(), 0) {}

  void run() {
    std::vector<StaticEvent> events;
    events.reserve(2 * curves_.size());
    for (std::size_t i = 0; i < curves_.size(); ++i) {
      const Curve& c = curves_[i];
      if (!(c.y_hi > c.y_lo)) continue;
      events.push_back({c.y_lo, kStart, static_cast<std::int32_t>(i)});
      events.push_back({c.y_hi, kEnd, static_cast<std::int32_t>(i)});
    }
    std::sort(events.begin(), events.end(), [](const StaticEvent& a, const StaticEvent& b) {
      if (a.y != b.y) return a.y < b.y;
      if (a.kind != b.kind) return a.kind < b.kind;
      return a.id < b.id;
    });
    std::size_t next = 0;
    while (next < events.size() || !crossings_.empty()) {
      if (stats_) ++stats_->events;
      bool take_cross = false;
      if (!crossings_.empty()) {
        if (next == events.size()) {
          take_cross = true;
        } else {
          const CrossEvent& c = crossings_.top();
          const StaticEvent& e = events[next];
          take_cross = c.y < e.y || (c.y == e.y && e.kind == kStart);
        }
      }
      if (take_cross) {
        const CrossEvent c = crossings_.top();
        crossings_.pop();
        handle_cross(c);
        continue;
      }
      const StaticEvent e = events[next];
      y_ = e.y;
      if (e.kind == kStart) {
        // Curves starting at one height all enter the lookup sets before any
        // of them is located, so lookups see the order just above y.
        std::size_t last = next;
        while (last < events.size() && events[last].y == e.y) ++last;
        for (std::size_t k = next; k < last; ++k) add_only(events[k].id);
        for (std::size_t k = next; k < last; ++k) {
          const std::int32_t id = events[k].id;
          if (listener_.on_start(id, nearest_other(id))) insert(id);
          else drop_only(id);
        }
        next = last;
      } else {
        ++next;
        if (alive_[static_cast<std::size_t>(e.id)]) remove(e.id);
      }
    }
  }

 private:
  struct Slot {
    mutable std::int32_t id;
  };

  struct Probe {
    double x;
  };

  struct Order {
    using is_transparent = void;
    const Sweep* sweep;
    bool operator()(const Slot& a, const Slot& b) const { return sweep->before(a.id, b.id); }
    bool operator()(const Slot& a, const Probe& p) const { return sweep->x_of(a.id) <= p.x; }
    bool operator()(const Probe& p, const Slot& a) const { return p.x < sweep->x_of(a.id); }
  };

  using Status = std::pmr::set<Slot, Order>;

  double x_of(std::int32_t id) const { return curves_[static_cast<std::size_t>(id)].x_at(y_); }

  std::int32_t nearest_other(std::int32_t id) const {
    const std::uint8_t c = colour_[static_cast<std::size_t>(id)];
    if (!locate_[c]) return -1;
    const Status& other = only_[1 - c];
    const auto it = other.lower_bound(Probe{x_of(id)});
    return it == other.end() ? -1 : it->id;
  }

  static double x_tol(double xa, double xb) noexcept {
    return 1e-10 * (1.0 + std::max(std::abs(xa), std::abs(xb)));
  }

  // Left-to-right order just above the current sweep line.
  bool before(std::int32_t a, std::int32_t b) const {
    if (a == b) return false;
    const Curve& ca = curves_[static_cast<std::size_t>(a)];
    const Curve& cb = curves_[static_cast<std::size_t>(b)];
    const double xa = ca.x_at(y_);
    const double xb = cb.x_at(y_);
    const double tol = x_tol(xa, xb);
    if (xa < xb - tol) return true;
    if (xa > xb + tol) return false;
    const double sa = ca.slope_at(y_);
    const double sb = cb.slope_at(y_);
    if (std::abs(sa - sb) > 1e-12) return sa < sb;
    return a < b;
  }

  void check_pair(std::int32_t l, std::int32_t r) {
    const std::uint8_t cl = colour_[static_cast<std::size_t>(l)];
    const std::uint8_t cr = colour_[static_cast<std::size_t>(r)];
    if (cl == cr && !self_cross_[cl]) return;
    const CurveCrossings cc =
        intersect_curves(curves_[static_cast<std::size_t>(l)], curves_[static_cast<std::size_t>(r)]);
    if (cc.count == 0) return;
    const double eta = 1e-12 * (1.0 + std::abs(y_));
    for (int i = 0; i < cc.count; ++i) {
      const double y = cc.y[static_cast<std::size_t>(i)];
      if (y <= y_ + eta) continue;
      if (cc.tangent && cl != cr) {
        throw DegenerateInput("sweep: tangency between boundary curves near y=" +
                              std::to_string(y));
      }
      crossings_.push({y, l, r});
      return;
    }
  }

  void add_only(std::int32_t id) {
    const auto i = static_cast<std::size_t>(id);
    const std::uint8_t c = colour_[i];
    if (locate_[1 - c]) where_only_[i] = only_[c].insert(Slot{id}).first;
  }

  void drop_only(std::int32_t id) {
    const auto i = static_cast<std::size_t>(id);
    const std::uint8_t c = colour_[i];
    if (locate_[1 - c]) only_[c].erase(where_only_[i]);
  }

  void insert(std::int32_t id) {
    const auto [it, fresh] = status_.insert(Slot{id});
    (void)fresh;
    where_[static_cast<std::size_t>(id)] = it;
    alive_[static_cast<std::size_t>(id)] = 1;
    if (it != status_.begin()) check_pair(std::prev(it)->id, id);
    const auto nx = std::next(it);
    if (nx != status_.end()) check_pair(id, nx->id);
  }

  void remove(std::int32_t id) {
    const auto it = where_[static_cast<std::size_t>(id)];
    const auto nx = std::next(it);
    const bool has_prev = it != status_.begin();
    const std::int32_t prev_id = has_prev ? std::prev(it)->id : -1;
    status_.erase(it);
    alive_[static_cast<std::size_t>(id)] = 0;
    drop_only(id);
    if (has_prev && nx != status_.end()) check_pair(prev_id, nx->id);
  }

  void handle_cross(const CrossEvent& c) {
    const auto l = static_cast<std::size_t>(c.left);
    const auto r = static_cast<std::size_t>(c.right);
    if (!alive_[l] || !alive_[r]) return;
    if (std::next(where_[l]) != where_[r]) return;
    y_ = c.y;
    // Swap only when the pair really exchanges order here; T-junction roots
    // leave it unchanged.
    const double xl = curves_[l].x_at(c.y);
    const double xr = curves_[r].x_at(c.y);
    const double tol = x_tol(xl, xr);
    bool swap = false;
    if (xr < xl - tol) swap = true;
    else if (xr <= xl + tol) swap = curves_[r].slope_at(c.y) < curves_[l].slope_at(c.y);
    if (!swap) return;

    where_[l]->id = c.right;
    where_[r]->id = c.left;
    std::swap(where_[l], where_[r]);
    const auto it_r = where_[r];
    const auto it_l = where_[l];
    if (it_r != status_.begin()) check_pair(std::prev(it_r)->id, c.right);
    check_pair(c.right, c.left);
    if (std::next(it_l) != status_.end()) check_pair(c.left, std::next(it_l)->id);

    if (colour_[l] == colour_[r]) return;
    if (stats_) ++stats_->crossings;
    const std::int32_t red = colour_[l] == 0 ? c.left : c.right;
    const std::int32_t blue = colour_[l] == 0 ? c.right : c.left;
    if (!listener_.on_cross(red, blue, c.y)) remove(red);
  }

  const std::vector<Curve>& curves_;
  const std::vector<std::uint8_t>& colour_;
  std::array<bool, 2> self_cross_;
  std::array<bool, 2> locate_;
  SweepListener& listener_;
  SweepStats* stats_;
  double y_ = 0.0;
  std::pmr::unsynchronized_pool_resource pool_;
  Status status_;
  std::array<Status, 2> only_;
  std::vector<Status::iterator> where_;
  std::vector<Status::iterator> where_only_;
  std::vector<std::uint8_t> alive_;
  std::priority_queue<CrossEvent, std::vector<CrossEvent>, std::greater<>> crossings_;
};

}  // namespace

void red_blue_sweep(const std::vector<Curve>& curves, const std::vector<std::uint8_t>& colour,
                    std::array<bool, 2> self_cross, std::array<bool, 2> locate,
                    SweepListener& listener, SweepStats* stats) {
  Sweep(curves, colour, self_cross, locate, listener, stats).run();
}

}  // namespace maxdisk::detail
