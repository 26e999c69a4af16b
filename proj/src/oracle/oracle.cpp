#include "reebstrip/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "reebstrip/error.hpp"
#include "reebstrip/parallel.hpp"

namespace reebstrip {

namespace {

bool in_bands(double p, const std::vector<Band>& bands, double pad = 0.0) {
  for (const auto& [lo, hi] : bands)
    if (p >= lo - pad && p <= hi + pad) return true;
  return false;
}

// Extremum of f on [a, b] by golden-section search; `maximize` picks the side.
double refine_extremum(const FunctionExpr& f, double a, double b, bool maximize) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  auto val = [&](double x) { return maximize ? -f.eval(x) : f.eval(x); };
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = val(x1), f2 = val(x2);
  for (int it = 0; it < 80 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
    if (f1 < f2) {
      b = x2, x2 = x1, f2 = f1;
      x1 = b - g * (b - a), f1 = val(x1);
    } else {
      a = x1, x1 = x2, f1 = f2;
      x2 = a + g * (b - a), f2 = val(x2);
    }
  }
  return f.eval(0.5 * (a + b));
}

std::vector<double> event_values(const FunctionExpr& f, const std::vector<double>& xs, const std::vector<double>& v) {
  struct Bracket {
    std::size_t lo, hi;
    bool maximize;
  };
  std::vector<Bracket> br;
  int prev_sign = 0;
  std::size_t prev = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    double d = v[i + 1] - v[i];
    if (d == 0.0 || !std::isfinite(d)) continue;
    int s = d > 0 ? 1 : -1;
    if (prev_sign != 0 && s != prev_sign) br.push_back({prev, i + 1, prev_sign > 0});
    prev_sign = s;
    prev = i;
  }
  std::vector<double> out(br.size());
  parallel_for(br.size(), [&](std::size_t k) {
    out[k] = refine_extremum(f, xs[br[k].lo], xs[br[k].hi], br[k].maximize);
  });
  out.push_back(v.front());
  out.push_back(v.back());
  return out;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

template <class T>
void put(std::ostream& os, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  os.write(buf, sizeof(T));
}

template <class T>
T get(std::istream& is) {
  char buf[sizeof(T)];
  if (!is.read(buf, sizeof(T))) throw Error("raster dump truncated");
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

}  // namespace

DiscreteGraph discrete_reeb(const FunctionExpr& c1, const FunctionExpr& c2, const Window& w, const OracleOptions& opt) {
  if (opt.K < 2) throw PreconditionError("discrete_reeb: K must be at least 2");
  if (opt.nx < 3) throw PreconditionError("discrete_reeb: nx must be at least 3");
  w.validate();
  DiscreteGraph g;
  RasterRegion& r = g.raster;
  const int nx = opt.nx, K = opt.K;
  r.xs.resize(nx);
  for (int i = 0; i < nx; ++i) r.xs[i] = w.x_lo + (w.x_hi - w.x_lo) * i / (nx - 1);
  std::vector<double> a(nx), b(nx);
  parallel_for(static_cast<std::size_t>(nx), [&](std::size_t i) {
    a[i] = c1.eval(r.xs[i]);
    b[i] = c2.eval(r.xs[i]);
  });

  // Reliability: distinct event values must be resolved by the rows.
  double dp = (w.value_hi - w.value_lo) / K;
  std::vector<double> ev = event_values(c1, r.xs, a);
  for (double v : event_values(c2, r.xs, b)) ev.push_back(v);
  ev.push_back(w.value_lo);
  ev.push_back(w.value_hi);
  std::erase_if(ev, [&](double p) { return p < w.value_lo || p > w.value_hi || in_bands(p, opt.exclude); });
  std::sort(ev.begin(), ev.end());
  double gap = INFINITY;
  for (std::size_t i = 0; i + 1 < ev.size(); ++i) {
    double d = ev[i + 1] - ev[i];
    if (d > 1e-9 * std::max(1.0, std::abs(ev[i]))) gap = std::min(gap, d);
  }
  g.min_event_gap = gap;
  if (!(dp < 0.5 * gap)) {
    std::ostringstream os;
    os << "oracle unreliable: level spacing " << dp << " is not below half the smallest event gap " << gap;
    throw OracleUnreliable(os.str());
  }

  r.levels.resize(K);
  r.runs.assign(K, {});
  parallel_for(static_cast<std::size_t>(K), [&](std::size_t k) {
    double p = w.value_lo + (static_cast<double>(k) + 0.5) * dp;
    r.levels[k] = p;
    int start = -1;
    for (int i = 0; i < nx; ++i) {
      bool in = a[i] <= p && p <= b[i];
      if (in && start < 0) start = i;
      if (!in && start >= 0) {
        r.runs[k].push_back({start, i - 1});
        start = -1;
      }
    }
    if (start >= 0) r.runs[k].push_back({start, nx - 1});
  });

  // Nodes and links between adjacent rows (one-sample slack).
  std::vector<int> first(K + 1, 0);
  for (int k = 0; k < K; ++k) first[k + 1] = first[k] + static_cast<int>(r.runs[k].size());
  int n = first[K];
  std::vector<std::vector<int>> up(n), down(n);
  for (int k = 0; k + 1 < K; ++k) {
    const auto& A = r.runs[k];
    const auto& B = r.runs[k + 1];
    std::size_t j0 = 0;
    for (std::size_t i = 0; i < A.size(); ++i) {
      while (j0 < B.size() && B[j0].second + 1 < A[i].first) ++j0;
      for (std::size_t j = j0; j < B.size() && B[j].first <= A[i].second + 1; ++j) {
        int na = first[k] + static_cast<int>(i), nb = first[k + 1] + static_cast<int>(j);
        up[na].push_back(nb);
        down[nb].push_back(na);
      }
    }
  }

  std::vector<int> row(n);
  for (int k = 0; k < K; ++k)
    for (int t = first[k]; t < first[k + 1]; ++t) row[t] = k;

  // A run at an x-edge that ends between two rows leaves through the edge
  // at the edge value of the failing curve. It is an open end when the
  // region continues past the edge just beyond that value.
  double h = r.xs[1] - r.xs[0];
  auto continues = [&](const std::pair<int, int>& run, bool upward) {
    for (int side = 0; side < 2; ++side) {
      if (side == 0 ? run.first != 0 : run.second != nx - 1) continue;
      double edge = side == 0 ? w.x_lo : w.x_hi;
      double q = upward ? c2.eval(edge) : c1.eval(edge);
      double p = q + (upward ? 1e-9 : -1e-9) * std::max(1.0, std::abs(q));
      for (int j = 0; j <= 12; ++j) {
        double x = side == 0 ? w.x_lo - h * std::ldexp(1.0, j) : w.x_hi + h * std::ldexp(1.0, j);
        if (c1.eval(x) <= p && p <= c2.eval(x)) return true;
      }
    }
    return false;
  };

  enum : char { Pass, Vertex, End };
  std::vector<char> kind(n, Pass);
  for (int t = 0; t < n; ++t) {
    int d = static_cast<int>(down[t].size()), u = static_cast<int>(up[t].size());
    if (d == 1 && u == 1) continue;
    int k = row[t];
    const auto& run = r.runs[k][t - first[k]];
    bool open = false;
    if (d == 0 && u == 1) open = k == 0 || continues(run, false);
    if (d == 1 && u == 0) open = k == K - 1 || continues(run, true);
    kind[t] = open ? End : Vertex;
  }

  struct Link {
    int lo, hi;
  };
  std::vector<Link> links;
  for (int t = 0; t < n; ++t) {
    if (kind[t] == Pass) continue;
    for (int next : up[t]) {
      int cur = next;
      while (kind[cur] == Pass) cur = up[cur].front();
      links.push_back({t, cur});
    }
  }

  // Events at one level but different x straddle a row boundary as
  // vertices in adjacent rows joined directly; coalesce them.
  DisjointSets ds(static_cast<std::size_t>(n));
  std::vector<char> internal(links.size(), 0);
  for (std::size_t i = 0; i < links.size(); ++i) {
    const Link& l = links[i];
    if (kind[l.lo] == Vertex && kind[l.hi] == Vertex && row[l.hi] - row[l.lo] <= 1) {
      ds.unite(l.lo, l.hi);
      internal[i] = 1;
    }
  }
  std::vector<int> in(n, 0), out(n, 0), lo_row(n, K), hi_row(n, -1);
  for (int t = 0; t < n; ++t)
    if (kind[t] == Vertex) {
      int c = ds.find(t);
      lo_row[c] = std::min(lo_row[c], row[t]);
      hi_row[c] = std::max(hi_row[c], row[t]);
    }
  for (std::size_t i = 0; i < links.size(); ++i) {
    if (internal[i]) continue;
    ++out[ds.find(links[i].lo)];
    ++in[ds.find(links[i].hi)];
    ++g.edges;
  }
  DisjointSets comp(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < links.size(); ++i) comp.unite(links[i].lo, links[i].hi);
  int nodes = 0;
  for (int t = 0; t < n; ++t) {
    if (kind[t] == End) ++g.ends, ++nodes;
    if (kind[t] == Vertex && ds.find(t) == t) {
      ++nodes;
      int k = (lo_row[t] + hi_row[t]) / 2;
      double level = lo_row[t] == hi_row[t] ? r.levels[k] : 0.5 * (r.levels[lo_row[t]] + r.levels[hi_row[t]]);
      g.vertices.push_back({level, k, in[t], out[t]});
    }
    if (kind[t] != Pass && comp.find(t) == t) ++g.components;
  }
  g.loops = g.edges - nodes + g.components;
  return g;
}

std::vector<Band> exclusion_bands(const std::vector<double>& levels, const Window& w, double frac) {
  double h = frac * (w.value_hi - w.value_lo);
  std::vector<Band> out;
  for (double p : levels) out.push_back({p - h, p + h});
  return out;
}

OracleDiff compare(const ReebGraph& g, const DiscreteGraph& d, const std::vector<Band>& exclude) {
  OracleDiff diff;
  double pad = d.raster.levels.size() > 1 ? d.raster.levels[1] - d.raster.levels[0] : 0.0;
  std::vector<std::pair<DegreePair, double>> sv, ov;
  for (const auto& v : g.vertices)
    if (!(v.in_degree == 1 && v.out_degree == 1) && !in_bands(v.level, exclude))
      sv.push_back({{v.in_degree, v.out_degree}, v.level});
  for (const auto& v : d.vertices)
    if (!(v.in_degree == 1 && v.out_degree == 1) && !in_bands(v.level, exclude, pad)) ov.push_back({{v.in_degree, v.out_degree}, v.level});
  std::sort(sv.begin(), sv.end());
  std::sort(ov.begin(), ov.end());
  for (const auto& x : sv) diff.sweep_degrees.push_back(x.first);
  for (const auto& x : ov) diff.oracle_degrees.push_back(x.first);
  // Unmatched vertices: greedy by degree class, nearest level.
  std::vector<char> used(ov.size(), 0);
  for (const auto& [deg, lvl] : sv) {
    int best = -1;
    for (std::size_t j = 0; j < ov.size(); ++j)
      if (!used[j] && ov[j].first == deg && (best < 0 || std::abs(ov[j].second - lvl) < std::abs(ov[best].second - lvl)))
        best = static_cast<int>(j);
    if (best >= 0) used[best] = 1;
    else diff.suspects.push_back(lvl);
  }
  for (std::size_t j = 0; j < ov.size(); ++j)
    if (!used[j]) diff.suspects.push_back(ov[j].second);
  std::sort(diff.suspects.begin(), diff.suspects.end());
  diff.sweep_loops = g.loops;
  diff.oracle_loops = d.loops;
  diff.sweep_ends = g.ends;
  diff.oracle_ends = d.ends;
  return diff;
}

std::string OracleDiff::describe() const {
  std::ostringstream os;
  auto list = [&](const std::vector<DegreePair>& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << '(' << v[i].first << ',' << v[i].second << ')';
    os << ']';
  };
  os << "vertices sweep=";
  list(sweep_degrees);
  os << " oracle=";
  list(oracle_degrees);
  os << " loops " << sweep_loops << '/' << oracle_loops << " ends " << sweep_ends << '/' << oracle_ends;
  if (!suspects.empty()) {
    os << " suspects at";
    for (double p : suspects) os << ' ' << p;
  }
  return os.str();
}

void write_raster(std::ostream& os, const RasterRegion& r) {
  os.write("RSRASTER", 8);
  put<std::uint32_t>(os, 1);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(r.levels.size()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(r.xs.size()));
  put<double>(os, r.xs.empty() ? 0.0 : r.xs.front());
  put<double>(os, r.xs.empty() ? 0.0 : r.xs.back());
  for (std::size_t k = 0; k < r.levels.size(); ++k) {
    put<double>(os, r.levels[k]);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(r.runs[k].size()));
    for (const auto& [s, e] : r.runs[k]) {
      put<std::uint32_t>(os, static_cast<std::uint32_t>(s));
      put<std::uint32_t>(os, static_cast<std::uint32_t>(e));
    }
  }
}

RasterRegion read_raster(std::istream& is) {
  char magic[8];
  if (!is.read(magic, 8) || std::memcmp(magic, "RSRASTER", 8) != 0) throw Error("not a raster dump");
  if (get<std::uint32_t>(is) != 1) throw Error("unsupported raster dump version");
  RasterRegion r;
  auto rows = get<std::uint32_t>(is);
  auto nx = get<std::uint32_t>(is);
  double lo = get<double>(is), hi = get<double>(is);
  r.xs.resize(nx);
  for (std::uint32_t i = 0; i < nx; ++i) r.xs[i] = nx > 1 ? lo + (hi - lo) * i / (nx - 1) : lo;
  r.levels.resize(rows);
  r.runs.resize(rows);
  for (std::uint32_t k = 0; k < rows; ++k) {
    r.levels[k] = get<double>(is);
    auto cnt = get<std::uint32_t>(is);
    for (std::uint32_t j = 0; j < cnt; ++j) {
      int s = static_cast<int>(get<std::uint32_t>(is));
      int e = static_cast<int>(get<std::uint32_t>(is));
      r.runs[k].push_back({s, e});
    }
  }
  return r;
}

}  // namespace reebstrip
