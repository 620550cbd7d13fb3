#include "conway/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "conway/error.hpp"

namespace conway {

namespace {

bool opposite_signs(const BigInt& x, const BigInt& y) { return sgn(x) * sgn(y) < 0; }

std::string vertex_id(const TopographVertex& v) { return (v.lower ? "d" : "u") + to_string(v.word); }

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(ch);
    }
  }
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", x);
  return buf;
}

const char* value_colour(const BigInt& v) { return v > 0 ? "#202020" : v < 0 ? "#b22222" : "#0b5394"; }

}  // namespace

TopographNeighborhood topograph_neighborhood(const QuadraticForm& q, int depth) {
  if (depth < 0 || depth > 12) throw DomainError("render depth must be between 0 and 12, got " + std::to_string(depth));
  TopographNeighborhood nb;
  nb.form = q;
  nb.depth = depth;
  nb.root_edge_on_river = opposite_signs(q.a, q.b);
  const QuadraticForm mirrored{q.a, -q.h, q.b};
  nb.vertices.push_back({{}, false, form_values(q), -1, nb.root_edge_on_river});
  nb.vertices.push_back({{}, true, form_values(mirrored), -1, nb.root_edge_on_river});
  std::size_t level_begin = 0;
  for (int d = 0; d < depth; ++d) {
    const std::size_t level_end = nb.vertices.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (Turn t : {Turn::L, Turn::R}) {
        const TopographVertex& parent = nb.vertices[i];
        const SuperbaseTriple& pt = parent.triple;
        TopographVertex child;
        child.word = parent.word;
        child.word.push_back(t);
        child.lower = parent.lower;
        child.triple = step(pt, t);
        child.parent = static_cast<int>(i);
        child.river_edge = t == Turn::L ? opposite_signs(pt.a, pt.c) : opposite_signs(pt.c, pt.b);
        nb.vertices.push_back(std::move(child));
      }
    }
    level_begin = level_end;
  }
  return nb;
}

std::string render_dot(const TopographNeighborhood& nb) {
  std::ostringstream os;
  os << "graph topograph {\n";
  os << "  label=\"" << dot_escape(nb.form.to_string()) << "  (depth " << nb.depth << ")\";\n";
  os << "  labelloc=t;\n  rankdir=BT;\n";
  os << "  node [shape=circle, fontsize=10, width=0.3, fixedsize=false];\n";
  for (const TopographVertex& v : nb.vertices) {
    const BigInt& c = v.triple.c;
    os << "  " << vertex_id(v) << " [label=\"" << c.get_str() << "\", tooltip=\"" << v.triple.to_string() << "\"";
    if (c == 0) os << ", style=filled, fillcolor=\"#9fd3ff\", xlabel=\"lake\"";
    if (c < 0) os << ", fontcolor=\"#b22222\"";
    os << "];\n";
  }
  const auto edge_style = [](bool river) {
    return river ? std::string(", color=\"#1f5fbf\", penwidth=3") : std::string(", color=\"#888888\"");
  };
  const BigInt& a = nb.form.a;
  const BigInt& b = nb.form.b;
  os << "  u -- d [label=\"" << a.get_str() << (a == 0 ? " (lake)" : "") << " | " << b.get_str() << (b == 0 ? " (lake)" : "")
     << "\"" << edge_style(nb.root_edge_on_river) << "];\n";
  for (const TopographVertex& v : nb.vertices) {
    if (v.parent < 0) continue;
    os << "  " << vertex_id(nb.vertices[static_cast<std::size_t>(v.parent)]) << " -- " << vertex_id(v) << " ["
       << "label=\"" << static_cast<char>(v.word.back()) << "\"" << edge_style(v.river_edge) << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string render_svg(const TopographNeighborhood& nb) {
  const double width = 1000;
  const double height = 760;
  const double mid = height / 2;
  const double gap = 24;
  const double dy = (mid - gap - 30) / (nb.depth + 1);

  struct Placed {
    double x, y, x0, x1;
  };
  std::vector<Placed> pos(nb.vertices.size());
  for (std::size_t i = 0; i < nb.vertices.size(); ++i) {
    const TopographVertex& v = nb.vertices[i];
    double x0 = 0;
    double x1 = width;
    if (v.parent >= 0) {
      const Placed& p = pos[static_cast<std::size_t>(v.parent)];
      const double xm = (p.x0 + p.x1) / 2;
      x0 = v.word.back() == Turn::L ? p.x0 : xm;
      x1 = v.word.back() == Turn::L ? xm : p.x1;
    }
    const double level = static_cast<double>(v.word.size());
    const double y = v.lower ? mid + gap + level * dy : mid - gap - level * dy;
    pos[i] = {(x0 + x1) / 2, y, x0, x1};
  }

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 "
     << width << " " << height << "\" font-family=\"sans-serif\">\n";
  os << "  <title>" << xml_escape(nb.form.to_string()) << "</title>\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "  <text x=\"12\" y=\"22\" font-size=\"15\">" << xml_escape(nb.form.to_string()) << "</text>\n";

  const auto line = [&os](const Placed& p, const Placed& q, bool river) {
    os << "  <line x1=\"" << fmt(p.x) << "\" y1=\"" << fmt(p.y) << "\" x2=\"" << fmt(q.x) << "\" y2=\"" << fmt(q.y)
       << "\" stroke=\"" << (river ? "#1f5fbf" : "#888888") << "\" stroke-width=\"" << (river ? 4 : 1.5)
       << "\"" << (river ? " class=\"river\"" : "") << "/>\n";
  };
  const auto face = [&os](double x, double y, const BigInt& value, double size) {
    if (value == 0) {
      os << "  <circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << fmt(size) << "\" fill=\"#9fd3ff\" class=\"lake\"/>\n";
    }
    os << "  <text x=\"" << fmt(x) << "\" y=\"" << fmt(y + size / 3) << "\" font-size=\"" << fmt(size)
       << "\" text-anchor=\"middle\" fill=\"" << value_colour(value) << "\">" << value.get_str() << "</text>\n";
  };

  line(pos[0], pos[1], nb.root_edge_on_river);
  for (std::size_t i = 2; i < nb.vertices.size(); ++i) {
    line(pos[static_cast<std::size_t>(nb.vertices[i].parent)], pos[i], nb.vertices[i].river_edge);
  }
  face(width / 4, mid, nb.form.a, 16);
  face(3 * width / 4, mid, nb.form.b, 16);
  for (std::size_t i = 0; i < nb.vertices.size(); ++i) {
    const TopographVertex& v = nb.vertices[i];
    const double size = std::max(7.0, 14.0 - static_cast<double>(v.word.size()));
    const double y = v.lower ? pos[i].y + 0.6 * dy : pos[i].y - 0.6 * dy;
    face(pos[i].x, y, v.triple.c, size);
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace conway
