#include <algorithm>
#include <cmath>
#include <numeric>

#include "reebstrip/error.hpp"
#include "reebstrip/parallel.hpp"
#include "reebstrip/reeb.hpp"

namespace reebstrip {

namespace {

enum class Role { Center, Below, Above, Mid };

struct Event {
  double p;
  bool accumulation = false;
  bool value_bound = false;
  bool synthetic = false;
};

struct Station {
  double p;
  Role role;
  int event;  // index into events for Center/Below/Above, -1 for Mid
  LevelSlice slice;
};

struct Node {
  int station, index;
  std::vector<int> down, up;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

bool rel_close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

std::vector<Event> collect_events(const SliceContext& ctx, const AccumulationReport& acc) {
  const Window& w = ctx.window();
  std::vector<Event> raw;
  auto add = [&](double p, bool a, bool vb) {
    if (std::isfinite(p) && p >= w.value_lo && p <= w.value_hi) raw.push_back({p, a, vb, false});
  };
  for (const auto& c : ctx.components()) add(c.value, false, false);
  for (Owner o : {Owner::C1, Owner::C2})
    for (double x : {w.x_lo, w.x_hi}) add(ctx.c(o).eval(x), false, false);
  add(w.value_lo, false, true);
  add(w.value_hi, false, true);
  for (double p : acc.distinct_levels(w.tol.tau_val)) add(p, true, false);
  std::sort(raw.begin(), raw.end(), [](const Event& a, const Event& b) { return a.p < b.p; });

  std::vector<Event> ev;
  for (const Event& e : raw) {
    if (!ev.empty() && rel_close(ev.back().p, e.p, 1e-12)) {
      Event& b = ev.back();
      if (e.accumulation && !b.accumulation) b.p = e.p;
      if (e.value_bound) b.p = e.p;
      b.accumulation |= e.accumulation;
      b.value_bound |= e.value_bound;
      continue;
    }
    ev.push_back(e);
  }
  // Critical values next to an accumulation level belong to its event.
  std::vector<double> acc_levels;
  for (const Event& e : ev)
    if (e.accumulation) acc_levels.push_back(e.p);
  std::vector<Event> out;
  for (const Event& e : ev) {
    bool absorbed = false;
    if (!e.accumulation && !e.value_bound)
      for (double a : acc_levels)
        if (std::abs(a - e.p) <= w.tol.tau_val * std::max(1.0, std::abs(a))) absorbed = true;
    if (!absorbed) out.push_back(e);
  }
  return out;
}

}  // namespace

ReebGraph sweep(const SliceContext& ctx, const AccumulationReport& acc, const std::vector<NonNormalRecord>& records,
                const SweepOptions& opt) {
  const Window& w = ctx.window();
  ReebGraph g;
  std::vector<Event> events = collect_events(ctx, acc);
  if (events.size() > opt.max_events)
    throw PreconditionError("sweep: " + std::to_string(events.size()) + " events exceed the budget of " +
                            std::to_string(opt.max_events) + "; narrow the window");

  double min_gap = INFINITY, max_abs = 1.0;
  for (std::size_t k = 0; k + 1 < events.size(); ++k) min_gap = std::min(min_gap, events[k + 1].p - events[k].p);
  for (const Event& e : events) max_abs = std::max(max_abs, std::abs(e.p));
  double eps = std::isfinite(min_gap) ? opt.eps_factor * min_gap : 1e-6;
  double floor_eps = 1e-14 * max_abs;
  if (eps < floor_eps) {
    eps = floor_eps;
    if (4.0 * eps > min_gap)
      throw PreconditionError("sweep: events " + fmt(min_gap) + " apart are below floating resolution for matching");
  }

  // Station layout.
  std::vector<Station> st;
  for (std::size_t k = 0; k < events.size(); ++k) {
    int ki = static_cast<int>(k);
    if (k > 0) {
      double lo = events[k - 1].p, hi = events[k].p;
      st.push_back({0.5 * (lo + hi), Role::Mid, -1, {}});
      st.push_back({hi - eps, Role::Below, ki, {}});
    }
    st.push_back({events[k].p, Role::Center, ki, {}});
    if (k + 1 < events.size()) st.push_back({events[k].p + eps, Role::Above, ki, {}});
  }
  parallel_for(st.size(), [&](std::size_t i) { st[i].slice = ctx.slice(st[i].p); });

  // Localize count changes inside gaps with synthetic events.
  std::size_t synthetic = 0;
  for (std::size_t i = 0; i + 1 < st.size(); ++i) {
    if (st[i].role == Role::Center || st[i + 1].role == Role::Center) continue;
    std::size_t cl = st[i].slice.contours.size();
    if (cl == st[i + 1].slice.contours.size()) continue;
    if (++synthetic > opt.max_synthetic) throw PreconditionError("sweep: too many unexplained contour-count changes");
    Station lo = st[i], hi = st[i + 1];
    for (int it = 0; it < 80 && !rel_close(lo.p, hi.p, 1e-13); ++it) {
      double m = 0.5 * (lo.p + hi.p);
      LevelSlice s = ctx.slice(m);
      if (s.contours.size() == cl) lo = {m, Role::Mid, -1, std::move(s)};
      else hi = {m, Role::Mid, -1, std::move(s)};
    }
    int ki = static_cast<int>(events.size());
    double center = 0.5 * (lo.p + hi.p);
    events.push_back({center, false, false, true});
    g.diagnostics.push_back({"unresolved-event",
                             "contour count changes near level " + fmt(center) + " without a detected critical value",
                             center, center});
    Station b{lo.p, Role::Below, ki, std::move(lo.slice)};
    Station c{center, Role::Center, ki, ctx.slice(center)};
    Station a{hi.p, Role::Above, ki, std::move(hi.slice)};
    if (b.p == st[i].p) b.slice = st[i].slice;
    std::vector<Station> ins;
    if (b.p > st[i].p) ins.push_back(std::move(b));
    else st[i].role = Role::Below, st[i].event = ki;
    ins.push_back(std::move(c));
    if (a.p < st[i + 1].p) ins.push_back(std::move(a));
    else st[i + 1].role = Role::Above, st[i + 1].event = ki;
    st.insert(st.begin() + static_cast<std::ptrdiff_t>(i + 1), std::make_move_iterator(ins.begin()),
              std::make_move_iterator(ins.end()));
  }

  // Nodes and links.
  std::vector<Node> nodes;
  std::vector<int> first(st.size() + 1, 0);
  for (std::size_t i = 0; i < st.size(); ++i) {
    first[i] = static_cast<int>(nodes.size());
    for (std::size_t j = 0; j < st[i].slice.contours.size(); ++j) nodes.push_back({static_cast<int>(i), static_cast<int>(j), {}, {}});
  }
  first[st.size()] = static_cast<int>(nodes.size());
  double slack = 4.0 * w.tol.tau_x;
  auto overlap = [&](const Contour& a, const Contour& b) { return a.lo <= b.hi + slack && b.lo <= a.hi + slack; };
  for (std::size_t i = 0; i + 1 < st.size(); ++i) {
    const auto& A = st[i].slice.contours;
    const auto& B = st[i + 1].slice.contours;
    bool by_order = st[i].role != Role::Center && st[i + 1].role != Role::Center && A.size() == B.size();
    for (std::size_t a = 0; a < A.size(); ++a)
      for (std::size_t b = 0; b < B.size(); ++b) {
        if (by_order ? a != b : !overlap(A[a], B[b])) continue;
        int na = first[i] + static_cast<int>(a), nb = first[i + 1] + static_cast<int>(b);
        nodes[na].up.push_back(nb);
        nodes[nb].down.push_back(na);
      }
  }

  // Special nodes become vertices or ends.
  std::vector<int> vertex_of(nodes.size(), -1), end_of(nodes.size(), -1);
  auto node_contour = [&](int n) -> const Contour& { return st[nodes[n].station].slice.contours[nodes[n].index]; };
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const Station& s = st[nodes[n].station];
    const Contour& c = node_contour(static_cast<int>(n));
    int d = static_cast<int>(nodes[n].down.size()), u = static_cast<int>(nodes[n].up.size());
    bool pass = d == 1 && u == 1;
    std::optional<VertexOrigin> origin;
    int rec = -1;
    std::optional<EndCause> end;
    if (s.role == Role::Center) {
      const Event& e = events[s.event];
      if (e.accumulation)
        for (std::size_t r = 0; r < records.size(); ++r)
          if (rel_close(records[r].p, s.p, w.tol.tau_val) && c.lo <= records[r].contour.hi + slack &&
              records[r].contour.lo <= c.hi + slack)
            rec = static_cast<int>(r);
      if (rec >= 0) origin = VertexOrigin::NonNormalPoint;
      else if (c.is_critical) origin = VertexOrigin::CriticalContour;
      else if (pass) {
      } else if (d + u == 1) end = e.value_bound ? EndCause::ValueWindow : EndCause::XWindow;
      else if (e.synthetic) origin = VertexOrigin::Unresolved;
      else if (c.lo_at_edge || c.hi_at_edge || e.value_bound) origin = VertexOrigin::WindowCut;
      else {
        origin = VertexOrigin::Unresolved;
        g.diagnostics.push_back({"unresolved-vertex",
                                 "branching at level " + fmt(s.p) + " without a critical contour", c.lo, c.hi});
      }
    } else if (!pass) {
      origin = VertexOrigin::Unresolved;
      g.diagnostics.push_back({"unresolved-vertex",
                               "contour at level " + fmt(s.p) + " links " + std::to_string(d) + " down / " +
                                   std::to_string(u) + " up between events",
                               c.lo, c.hi});
    }
    if (origin) {
      ReebVertex v;
      v.id = static_cast<int>(g.vertices.size());
      v.level = s.p;
      v.origin = *origin;
      v.contour = c;
      v.in_degree = d;
      v.out_degree = u;
      v.record = rec;
      vertex_of[n] = v.id;
      g.vertices.push_back(std::move(v));
    } else if (end) {
      end_of[n] = g.ends++;
      (void)*end;
    }
    if (c.truncated) g.has_truncated = true;
  }
  auto end_cause = [&](int n) {
    const Station& s = st[nodes[n].station];
    return s.role == Role::Center && events[s.event].value_bound ? EndCause::ValueWindow : EndCause::XWindow;
  };
  auto make_end = [&](int n) {
    EdgeEnd e;
    e.level = st[nodes[n].station].p;
    if (vertex_of[n] >= 0) e.vertex = vertex_of[n];
    else e.cause = end_cause(n);
    return e;
  };

  // Edges: walk upward from every special node through pass-through nodes.
  auto special = [&](int n) { return vertex_of[n] >= 0 || end_of[n] >= 0; };
  int n_special = g.ends + static_cast<int>(g.vertices.size());
  auto key = [&](int n) { return vertex_of[n] >= 0 ? vertex_of[n] : static_cast<int>(g.vertices.size()) + end_of[n]; };
  DisjointSets ds(static_cast<std::size_t>(n_special));
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    if (!special(static_cast<int>(n))) continue;
    for (int next : nodes[n].up) {
      ReebEdge e;
      e.id = static_cast<int>(g.edges.size());
      e.lower = make_end(static_cast<int>(n));
      auto mid_of = [&](int k) { return Point2{st[nodes[k].station].p, node_contour(k).mid()}; };
      e.polyline.push_back(mid_of(static_cast<int>(n)));
      int cur = next;
      while (!special(cur)) {
        e.polyline.push_back(mid_of(cur));
        cur = nodes[cur].up.front();
      }
      e.polyline.push_back(mid_of(cur));
      e.upper = make_end(cur);
      e.level_lo = e.lower.level;
      e.level_hi = e.upper.level;
      bool lv = e.lower.is_vertex(), uv = e.upper.is_vertex();
      e.closure = lv && uv ? ClosureKind::Compact : (!lv && !uv ? ClosureKind::Line : ClosureKind::HalfOpen);
      ds.unite(key(static_cast<int>(n)), key(cur));
      g.edges.push_back(std::move(e));
    }
  }
  for (int i = 0; i < n_special; ++i)
    if (ds.find(i) == i) ++g.components;
  g.loops = static_cast<int>(g.edges.size()) - n_special + g.components;
  embed_plane(g);
  return g;
}

}  // namespace reebstrip
