#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "stitx/extremes.hpp"
#include "stitx/geometry.hpp"
#include "stitx/stit.hpp"

namespace stitx::io {

// Shortest decimal text that round-trips a double.
inline std::string fmt(double v) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline nlohmann::ordered_json to_json(Point p) { return nlohmann::ordered_json::array({p.x, p.y}); }

inline nlohmann::ordered_json to_json(const ConvexPolygon& poly) {
  auto arr = nlohmann::ordered_json::array();
  for (const Point& q : poly.vertices()) arr.push_back(to_json(q));
  return arr;
}

// Layout:
//   { "t_final": t, "window": [[x,y],...],
//     "cells": [{"vertices": [[x,y],...], "incenter": [x,y], "inradius": r,
//                "birth_time": b, "touches_sim_boundary": bool}, ...],
//     "segments": [{"a": [x,y], "b": [x,y], "phi": phi, "p": p, "birth_time": b}, ...] }
inline nlohmann::ordered_json to_json(const Tessellation& tess) {
  nlohmann::ordered_json j;
  j["t_final"] = tess.t_final;
  j["window"] = to_json(tess.sim_window);
  auto cells = nlohmann::ordered_json::array();
  for (const Cell& c : tess.cells) {
    nlohmann::ordered_json cj;
    cj["vertices"] = to_json(c.polygon);
    cj["incenter"] = to_json(c.incenter);
    cj["inradius"] = c.inradius;
    cj["birth_time"] = c.birth_time;
    cj["touches_sim_boundary"] = c.touches_sim_boundary;
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  auto segs = nlohmann::ordered_json::array();
  for (const MaximalSegment& s : tess.segments) {
    nlohmann::ordered_json sj;
    sj["a"] = to_json(s.segment.a);
    sj["b"] = to_json(s.segment.b);
    sj["phi"] = s.line.phi;
    sj["p"] = s.line.p;
    sj["birth_time"] = s.birth_time;
    segs.push_back(std::move(sj));
  }
  j["segments"] = std::move(segs);
  return j;
}

namespace detail {

inline Point point_from_json(const nlohmann::ordered_json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

inline ConvexPolygon polygon_from_json(const nlohmann::ordered_json& j) {
  std::vector<Point> v;
  for (const auto& q : j) v.push_back(point_from_json(q));
  return ConvexPolygon::trusted(std::move(v));
}

}  // namespace detail

inline Tessellation tessellation_from_json(const nlohmann::ordered_json& j) {
  Tessellation tess{j.at("t_final").get<double>(), detail::polygon_from_json(j.at("window")), {}, {}};
  for (const auto& cj : j.at("cells"))
    tess.cells.push_back({detail::polygon_from_json(cj.at("vertices")), detail::point_from_json(cj.at("incenter")),
                          cj.at("inradius").get<double>(), cj.at("birth_time").get<double>(),
                          cj.at("touches_sim_boundary").get<bool>()});
  for (const auto& sj : j.at("segments"))
    tess.segments.push_back({{detail::point_from_json(sj.at("a")), detail::point_from_json(sj.at("b"))},
                             {sj.at("phi").get<double>(), sj.at("p").get<double>()},
                             sj.at("birth_time").get<double>()});
  return tess;
}

inline void write_records_csv_header(std::ostream& os) { os << "rep,x,y,inradius,contaminated\n"; }

inline void write_records_csv(std::ostream& os, std::size_t rep, const extremes::InradiusRecordSet& set) {
  for (const auto& r : set.records)
    os << rep << ',' << fmt(r.incenter.x) << ',' << fmt(r.incenter.y) << ',' << fmt(r.inradius) << ','
       << (r.contaminated ? 1 : 0) << '\n';
}

// Skeleton polylines plus incircles; circles with radius above `highlight_above`
// drawn in red. `observation` (optional) is outlined dashed.
inline void write_svg(std::ostream& os, const Tessellation& tess, double highlight_above,
                      const ConvexPolygon* observation = nullptr, double pixels = 800.0) {
  const auto [lo, hi] = tess.sim_window.bounding_box();
  const double span = std::max(hi.x - lo.x, hi.y - lo.y);
  const double k = pixels / span;
  auto X = [&](double x) { return fmt((x - lo.x) * k); };
  auto Y = [&](double y) { return fmt((hi.y - y) * k); };
  auto poly_points = [&](const ConvexPolygon& p) {
    std::string s;
    for (const Point& q : p.vertices()) s += X(q.x) + "," + Y(q.y) + " ";
    return s;
  };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt((hi.x - lo.x) * k) << "\" height=\""
     << fmt((hi.y - lo.y) * k) << "\">\n";
  os << "<polygon points=\"" << poly_points(tess.sim_window) << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  for (const MaximalSegment& s : tess.segments)
    os << "<line x1=\"" << X(s.segment.a.x) << "\" y1=\"" << Y(s.segment.a.y) << "\" x2=\"" << X(s.segment.b.x)
       << "\" y2=\"" << Y(s.segment.b.y) << "\" stroke=\"black\" stroke-width=\"0.8\"/>\n";
  for (const Cell& c : tess.cells) {
    const bool hot = c.inradius > highlight_above;
    os << "<circle cx=\"" << X(c.incenter.x) << "\" cy=\"" << Y(c.incenter.y) << "\" r=\"" << fmt(c.inradius * k)
       << "\" fill=\"" << (hot ? "rgba(220,40,40,0.35)" : "none") << "\" stroke=\"" << (hot ? "#c00" : "#69c")
       << "\" stroke-width=\"" << (hot ? "1.2" : "0.4") << "\"/>\n";
  }
  if (observation)
    os << "<polygon points=\"" << poly_points(*observation)
       << "\" fill=\"none\" stroke=\"#080\" stroke-dasharray=\"6,4\" stroke-width=\"1.2\"/>\n";
  os << "</svg>\n";
}

}  // namespace stitx::io
