#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "reebstrip/io.hpp"

namespace reebstrip {

namespace {

std::string g10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string f3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string graph_to_dot(const ReebGraph& g) {
  std::ostringstream os;
  os << "digraph reeb {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n";
  std::map<std::string, std::vector<std::string>> ranks;
  for (const auto& v : g.vertices) {
    std::string id = "v" + std::to_string(v.id);
    os << "  " << id << " [label=\"" << g10(v.level) << "\", origin=\"" << to_string(v.origin) << "\"];\n";
    ranks[g10(v.level)].push_back(id);
  }
  int stub = 0;
  auto end_node = [&](const EdgeEnd& e) {
    if (e.is_vertex()) return "v" + std::to_string(e.vertex);
    std::string id = "end" + std::to_string(stub++);
    os << "  " << id << " [shape=point, label=\"\", cause=\"" << to_string(e.cause) << "\"];\n";
    return id;
  };
  for (const auto& e : g.edges) {
    std::string lo = end_node(e.lower), hi = end_node(e.upper);
    os << "  " << lo << " -> " << hi << " [label=\"e" << e.id << "\", closure=\"" << to_string(e.closure) << "\"";
    if (!e.oriented) os << ", dir=none";
    os << "];\n";
  }
  for (const auto& [level, ids] : ranks) {
    os << "  { rank=same;";
    for (const auto& id : ids) os << ' ' << id << ';';
    os << " }\n";
  }
  os << "}\n";
  return os.str();
}

std::string graph_to_svg(const ReebGraph& g, const FunctionExpr& c1, const FunctionExpr& c2, const Window& w) {
  const double W = 640, H = 480, M = 40;
  auto px = [&](double x) { return M + (x - w.x_lo) / (w.x_hi - w.x_lo) * (W - 2 * M); };
  auto py = [&](double p) { return H - M - (p - w.value_lo) / (w.value_hi - w.value_lo) * (H - 2 * M); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\">\n";
  os << "<rect x=\"" << f3(M) << "\" y=\"" << f3(M) << "\" width=\"" << f3(W - 2 * M) << "\" height=\"" << f3(H - 2 * M)
     << "\" fill=\"none\" stroke=\"#bbbbbb\"/>\n";
  const int samples = 600;
  auto curve = [&](const FunctionExpr& f, const char* color) {
    std::string pts;
    auto flush = [&] {
      if (!pts.empty()) os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << pts << "\"/>\n";
      pts.clear();
    };
    for (int i = 0; i <= samples; ++i) {
      double x = w.x_lo + (w.x_hi - w.x_lo) * i / samples;
      double v;
      try {
        v = f.eval(x);
      } catch (const std::exception&) {
        v = NAN;
      }
      if (!std::isfinite(v) || v < w.value_lo || v > w.value_hi) {
        flush();
        continue;
      }
      if (!pts.empty()) pts += ' ';
      pts += f3(px(x)) + ',' + f3(py(v));
    }
    flush();
  };
  curve(c1, "#1f5fbf");
  curve(c2, "#bf1f1f");
  for (const auto& e : g.edges) {
    os << "<polyline fill=\"none\" stroke=\"#000000\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < e.polyline.size(); ++i)
      os << (i ? " " : "") << f3(px(e.polyline[i].second)) << ',' << f3(py(e.polyline[i].first));
    os << "\"/>\n";
  }
  for (const auto& v : g.vertices)
    os << "<circle cx=\"" << f3(px(v.embed_point.second)) << "\" cy=\"" << f3(py(v.embed_point.first))
       << "\" r=\"3\" fill=\"#000000\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace reebstrip
