#include <cmath>
#include <limits>

#include "reebstrip/error.hpp"
#include "reebstrip/io.hpp"

namespace reebstrip {

namespace {

Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double get_num(const Json& j) { return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>(); }

template <class E, std::size_t N>
E parse_enum(const Json& j, const E (&values)[N], const char* what) {
  std::string s = j.get<std::string>();
  for (E v : values)
    if (to_string(v) == s) return v;
  throw Error(std::string("report: unknown ") + what + " '" + s + "'");
}

constexpr TriState kTri[] = {TriState::Yes, TriState::No, TriState::WindowLimited};
constexpr Owner kOwner[] = {Owner::C1, Owner::C2};
constexpr Side kSide[] = {Side::Minus, Side::Plus};
constexpr Confidence kConf[] = {Confidence::WindowLimited, Confidence::DeclaredTail};
constexpr ContourKind kContour[] = {ContourKind::Point, ContourKind::Compact, ContourKind::HalfUnboundedBelow,
                                    ContourKind::HalfUnboundedAbove, ContourKind::FullLine};
constexpr VertexOrigin kOrigin[] = {VertexOrigin::CriticalContour, VertexOrigin::NonNormalPoint,
                                    VertexOrigin::WindowCut, VertexOrigin::Unresolved};
constexpr EndCause kCause[] = {EndCause::XWindow, EndCause::ValueWindow};
constexpr ClosureKind kClosure[] = {ClosureKind::Compact, ClosureKind::HalfOpen, ClosureKind::Line};
constexpr KindVerdict kKind[] = {KindVerdict::Graph,   KindVerdict::EGraph,  KindVerdict::AGraph,
                                 KindVerdict::EAGraph, KindVerdict::WAGraph, KindVerdict::EWAGraph};
constexpr DigraphVerdict kDigraph[] = {DigraphVerdict::IsReebDigraph, DigraphVerdict::NotReebDigraph,
                                       DigraphVerdict::WindowLimited};

std::string str(std::string_view s) { return std::string(s); }

Json contour_json(const Contour& c) {
  Json j;
  j["lo"] = num(c.lo);
  j["hi"] = num(c.hi);
  j["kind"] = str(to_string(c.kind));
  j["lo_at_edge"] = c.lo_at_edge;
  j["hi_at_edge"] = c.hi_at_edge;
  j["lo_unbounded"] = c.lo_unbounded;
  j["hi_unbounded"] = c.hi_unbounded;
  j["touch_lo"] = c.touch_lo;
  j["touch_hi"] = c.touch_hi;
  j["is_critical"] = c.is_critical;
  j["truncated"] = c.truncated;
  Json pts = Json::array();
  for (const auto& [o, x] : c.critical_points) pts.push_back({{"owner", str(to_string(o))}, {"x", num(x)}});
  j["critical_points"] = pts;
  return j;
}

Contour contour_from(const Json& j) {
  Contour c;
  c.lo = get_num(j.at("lo"));
  c.hi = get_num(j.at("hi"));
  c.kind = parse_enum(j.at("kind"), kContour, "contour kind");
  c.lo_at_edge = j.at("lo_at_edge").get<bool>();
  c.hi_at_edge = j.at("hi_at_edge").get<bool>();
  c.lo_unbounded = j.at("lo_unbounded").get<bool>();
  c.hi_unbounded = j.at("hi_unbounded").get<bool>();
  c.touch_lo = j.at("touch_lo").get<int>();
  c.touch_hi = j.at("touch_hi").get<int>();
  c.is_critical = j.at("is_critical").get<bool>();
  c.truncated = j.at("truncated").get<bool>();
  for (const auto& p : j.at("critical_points"))
    c.critical_points.push_back({parse_enum(p.at("owner"), kOwner, "owner"), get_num(p.at("x"))});
  return c;
}

Json diagnostics_json(const Diagnostics& ds) {
  Json a = Json::array();
  for (const auto& d : ds)
    a.push_back({{"code", d.code}, {"message", d.message}, {"x_lo", num(d.x_lo)}, {"x_hi", num(d.x_hi)}});
  return a;
}

Diagnostics diagnostics_from(const Json& a) {
  Diagnostics ds;
  for (const auto& d : a)
    ds.push_back({d.at("code").get<std::string>(), d.at("message").get<std::string>(), get_num(d.at("x_lo")),
                  get_num(d.at("x_hi"))});
  return ds;
}

Json end_json(const EdgeEnd& e) {
  Json j;
  if (e.is_vertex()) j["vertex"] = e.vertex;
  else j["end"] = str(to_string(e.cause));
  j["level"] = num(e.level);
  return j;
}

EdgeEnd end_from(const Json& j) {
  EdgeEnd e;
  if (j.contains("vertex")) e.vertex = j.at("vertex").get<int>();
  else e.cause = parse_enum(j.at("end"), kCause, "end cause");
  e.level = get_num(j.at("level"));
  return e;
}

Json point_json(const Point2& p) { return Json::array({num(p.first), num(p.second)}); }
Point2 point_from(const Json& j) { return {get_num(j.at(0)), get_num(j.at(1))}; }

Json opt_num(const std::optional<double>& v) { return v ? num(*v) : Json(nullptr); }
std::optional<double> opt_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

TriState eag_of(KindVerdict k, Confidence c) {
  switch (k) {
    case KindVerdict::Graph:
    case KindVerdict::EGraph:
    case KindVerdict::AGraph:
    case KindVerdict::EAGraph: return c == Confidence::DeclaredTail ? TriState::Yes : TriState::WindowLimited;
    default: return c == Confidence::DeclaredTail ? TriState::No : TriState::WindowLimited;
  }
}

}  // namespace

Json graph_to_json(const ReebGraph& g) {
  Json j;
  Json vs = Json::array();
  for (const auto& v : g.vertices) {
    Json x;
    x["id"] = v.id;
    x["level"] = num(v.level);
    x["origin"] = str(to_string(v.origin));
    x["in_degree"] = v.in_degree;
    x["out_degree"] = v.out_degree;
    x["record"] = v.record;
    x["embed"] = point_json(v.embed_point);
    x["contour"] = contour_json(v.contour);
    vs.push_back(std::move(x));
  }
  Json es = Json::array();
  for (const auto& e : g.edges) {
    Json x;
    x["id"] = e.id;
    x["lower"] = end_json(e.lower);
    x["upper"] = end_json(e.upper);
    x["closure"] = str(to_string(e.closure));
    x["level_lo"] = num(e.level_lo);
    x["level_hi"] = num(e.level_hi);
    x["oriented"] = e.oriented;
    Json pl = Json::array();
    for (const auto& p : e.polyline) pl.push_back(point_json(p));
    x["polyline"] = pl;
    es.push_back(std::move(x));
  }
  j["vertices"] = vs;
  j["edges"] = es;
  j["ends"] = g.ends;
  j["loops"] = g.loops;
  j["components"] = g.components;
  j["kind"] = str(to_string(g.kind));
  j["kind_confidence"] = str(to_string(g.kind_confidence));
  j["digraph"] = str(to_string(g.digraph));
  j["ea_digraph"] = str(to_string(g.ea_digraph));
  j["has_truncated"] = g.has_truncated;
  j["diagnostics"] = diagnostics_json(g.diagnostics);
  return j;
}

ReebGraph graph_from_json(const Json& j) {
  ReebGraph g;
  for (const auto& x : j.at("vertices")) {
    ReebVertex v;
    v.id = x.at("id").get<int>();
    v.level = get_num(x.at("level"));
    v.origin = parse_enum(x.at("origin"), kOrigin, "vertex origin");
    v.in_degree = x.at("in_degree").get<int>();
    v.out_degree = x.at("out_degree").get<int>();
    v.record = x.at("record").get<int>();
    v.embed_point = point_from(x.at("embed"));
    v.contour = contour_from(x.at("contour"));
    g.vertices.push_back(std::move(v));
  }
  for (const auto& x : j.at("edges")) {
    ReebEdge e;
    e.id = x.at("id").get<int>();
    e.lower = end_from(x.at("lower"));
    e.upper = end_from(x.at("upper"));
    e.closure = parse_enum(x.at("closure"), kClosure, "closure");
    e.level_lo = get_num(x.at("level_lo"));
    e.level_hi = get_num(x.at("level_hi"));
    e.oriented = x.at("oriented").get<bool>();
    for (const auto& p : x.at("polyline")) e.polyline.push_back(point_from(p));
    g.edges.push_back(std::move(e));
  }
  g.ends = j.at("ends").get<int>();
  g.loops = j.at("loops").get<int>();
  g.components = j.at("components").get<int>();
  g.kind = parse_enum(j.at("kind"), kKind, "kind");
  g.kind_confidence = parse_enum(j.at("kind_confidence"), kConf, "confidence");
  g.digraph = parse_enum(j.at("digraph"), kDigraph, "digraph verdict");
  g.ea_digraph = parse_enum(j.at("ea_digraph"), kTri, "tri-state");
  g.has_truncated = j.at("has_truncated").get<bool>();
  g.diagnostics = diagnostics_from(j.at("diagnostics"));
  return g;
}

ReportDoc make_report(const PipelineResult& r) {
  ReportDoc d;
  const JobConfig& job = r.job;
  const Window& w = job.window;
  d.input["c1"] = job.c1;
  d.input["c2"] = job.c2;
  d.input["window"] = {{"x_lo", num(w.x_lo)}, {"x_hi", num(w.x_hi)}, {"value_lo", num(w.value_lo)}, {"value_hi", num(w.value_hi)}};
  Json tails;
  for (Owner o : kOwner) {
    Json t;
    for (Side s : kSide) t[str(to_string(s))] = job.tails.get(o, s).describe();
    tails[str(to_string(o))] = t;
  }
  d.input["tails"] = tails;
  d.classification = r.classification;
  d.z_f = r.classification.z_f;
  d.non_normal = r.records;
  if (r.has_graph) d.graph = r.graph;
  d.kind = r.graph.kind;
  d.kind_confidence = r.graph.kind_confidence;
  d.digraph = r.graph.digraph;
  d.ea_digraph = r.graph.ea_digraph;
  d.accumulation_confidence = r.accumulation.confidence;
  Json acc = Json::array();
  for (const auto& l : r.accumulation.levels)
    acc.push_back({{"p", num(l.p)},
                   {"owner", str(to_string(l.owner))},
                   {"side", str(to_string(l.side))},
                   {"witnesses", l.witnesses.size()},
                   {"confidence", str(to_string(l.confidence))},
                   {"envelope", l.envelope}});
  d.extra["accumulation"] = acc;
  d.extra["separation"] = {{"min_gap", num(r.separation.min_gap)}, {"x_at_min", num(r.separation.x_at_min)}};
  d.extra["critical_points"] = {{"c1", r.critical[0].components.size()}, {"c2", r.critical[1].components.size()}};
  d.extra["diagnostics"] = diagnostics_json(r.diagnostics);
  return d;
}

Json to_json(const ReportDoc& d) {
  Json j;
  j["schema"] = "reebstrip-report/1";
  j["input"] = d.input;
  const auto& c = d.classification;
  Json cl;
  cl["ts"] = str(to_string(c.ts));
  cl["dc"] = str(to_string(c.dc));
  cl["nts"] = str(to_string(c.nts));
  cl["ndc"] = str(to_string(c.ndc));
  cl["pts"] = str(to_string(c.pts));
  cl["pdc"] = str(to_string(c.pdc));
  cl["minimal"] = str(to_string(c.minimal));
  cl["z_m"] = {{"c1", opt_num(c.z_m[0])}, {"c2", opt_num(c.z_m[1])}};
  cl["z_M"] = {{"c1", opt_num(c.z_M[0])}, {"c2", opt_num(c.z_M[1])}};
  Json ev = Json::array();
  for (const auto& e : c.evidence) ev.push_back({{"verdict", e.verdict}, {"reason", e.reason}});
  cl["evidence"] = ev;
  j["classification"] = cl;
  Json zf = Json::array();
  for (double p : d.z_f) zf.push_back(num(p));
  j["z_f"] = zf;
  Json nn = Json::array();
  for (const auto& r : d.non_normal) {
    Json x;
    x["p"] = num(r.p);
    x["contour"] = contour_json(r.contour);
    x["is_critical"] = r.is_critical;
    x["mild"] = str(to_string(r.mild));
    x["monotone_tail"] = r.monotone_tail ? Json::array({num(r.monotone_tail->first), num(r.monotone_tail->second)}) : Json(nullptr);
    Json seqs = Json::array();
    for (const auto& s : r.sequences) {
      Json w = Json::array();
      for (double x1 : s.witnesses) w.push_back(num(x1));
      seqs.push_back({{"owner", str(to_string(s.owner))}, {"direction", str(to_string(s.direction))}, {"witnesses", w}});
    }
    x["sequences"] = seqs;
    nn.push_back(std::move(x));
  }
  j["non_normal"] = nn;
  j["graph"] = d.graph ? graph_to_json(*d.graph) : Json(nullptr);
  j["verdicts"] = {{"ewag", str(to_string(d.kind))},
                   {"eag", str(to_string(eag_of(d.kind, d.kind_confidence)))},
                   {"digraph", str(to_string(d.digraph))},
                   {"ea_digraph", str(to_string(d.ea_digraph))}};
  j["confidence"] = {{"kind", str(to_string(d.kind_confidence))},
                     {"accumulation", str(to_string(d.accumulation_confidence))}};
  j["extra"] = d.extra;
  return j;
}

ReportDoc report_from_json(const Json& j) {
  if (j.value("schema", "") != "reebstrip-report/1") throw Error("report: unsupported schema");
  ReportDoc d;
  d.input = j.at("input");
  const Json& cl = j.at("classification");
  auto& c = d.classification;
  c.ts = parse_enum(cl.at("ts"), kTri, "tri-state");
  c.dc = parse_enum(cl.at("dc"), kTri, "tri-state");
  c.nts = parse_enum(cl.at("nts"), kTri, "tri-state");
  c.ndc = parse_enum(cl.at("ndc"), kTri, "tri-state");
  c.pts = parse_enum(cl.at("pts"), kTri, "tri-state");
  c.pdc = parse_enum(cl.at("pdc"), kTri, "tri-state");
  c.minimal = parse_enum(cl.at("minimal"), kTri, "tri-state");
  c.z_m[0] = opt_from(cl.at("z_m").at("c1"));
  c.z_m[1] = opt_from(cl.at("z_m").at("c2"));
  c.z_M[0] = opt_from(cl.at("z_M").at("c1"));
  c.z_M[1] = opt_from(cl.at("z_M").at("c2"));
  for (const auto& e : cl.at("evidence")) c.evidence.push_back({e.at("verdict").get<std::string>(), e.at("reason").get<std::string>()});
  for (const auto& p : j.at("z_f")) d.z_f.push_back(get_num(p));
  c.z_f = d.z_f;
  for (const auto& x : j.at("non_normal")) {
    NonNormalRecord r;
    r.p = get_num(x.at("p"));
    r.contour = contour_from(x.at("contour"));
    r.is_critical = x.at("is_critical").get<bool>();
    r.mild = parse_enum(x.at("mild"), kTri, "tri-state");
    if (!x.at("monotone_tail").is_null())
      r.monotone_tail = std::make_pair(get_num(x.at("monotone_tail").at(0)), get_num(x.at("monotone_tail").at(1)));
    for (const auto& s : x.at("sequences")) {
      CharacteristicSequence q;
      q.owner = parse_enum(s.at("owner"), kOwner, "owner");
      q.direction = parse_enum(s.at("direction"), kSide, "side");
      for (const auto& w : s.at("witnesses")) q.witnesses.push_back(get_num(w));
      r.sequences.push_back(std::move(q));
    }
    d.non_normal.push_back(std::move(r));
  }
  if (!j.at("graph").is_null()) d.graph = graph_from_json(j.at("graph"));
  const Json& v = j.at("verdicts");
  d.kind = parse_enum(v.at("ewag"), kKind, "kind");
  d.digraph = parse_enum(v.at("digraph"), kDigraph, "digraph verdict");
  d.ea_digraph = parse_enum(v.at("ea_digraph"), kTri, "tri-state");
  d.kind_confidence = parse_enum(j.at("confidence").at("kind"), kConf, "confidence");
  d.accumulation_confidence = parse_enum(j.at("confidence").at("accumulation"), kConf, "confidence");
  d.extra = j.at("extra");
  return d;
}

Json prop1_to_json(const Prop1Report& r) {
  Json j;
  j["ok"] = r.ok();
  j["probes"] = r.probes;
  j["regularity_failures"] = r.regularity_failures;
  j["predicted"] = r.predicted;
  j["predicted_regular"] = r.predicted_regular;
  j["rank0"] = r.rank0;
  j["unexplained_rank0"] = r.unexplained_rank0;
  j["morse_applicable"] = r.morse_applicable;
  j["morse_checked"] = r.morse_checked;
  j["morse_failures"] = r.morse_failures;
  j["min_morse_det"] = num(r.min_morse_det);
  j["disagreements"] = r.disagreements;
  return j;
}

Json diff_to_json(const OracleDiff& d) {
  auto degs = [](const std::vector<DegreePair>& v) {
    Json a = Json::array();
    for (const auto& [i, o] : v) a.push_back(Json::array({i, o}));
    return a;
  };
  Json j;
  j["match"] = d.match();
  j["sweep"] = {{"degrees", degs(d.sweep_degrees)}, {"loops", d.sweep_loops}, {"ends", d.sweep_ends}};
  j["oracle"] = {{"degrees", degs(d.oracle_degrees)}, {"loops", d.oracle_loops}, {"ends", d.oracle_ends}};
  Json s = Json::array();
  for (double p : d.suspects) s.push_back(num(p));
  j["suspects"] = s;
  return j;
}

}  // namespace reebstrip
