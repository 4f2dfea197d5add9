#include "caustica/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace caustica {

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
  int column = 0;  // of the value
  bool used = false;
};

[[noreturn]] void fail(int line, int column, const std::string& what) {
  throw Error(ErrorKind::ConfigError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

std::string_view trim(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t a = 0;
  while (a < s.size() && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
  std::size_t b = s.size();
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
  if (lead) *lead = a;
  return s.substr(a, b - a);
}

class Entries {
 public:
  explicit Entries(std::string_view text) {
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view raw = text.substr(pos, end - pos);
      ++line_no;
      pos = end + 1;
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      std::size_t lead = 0;
      std::string_view line = trim(raw, &lead);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail(line_no, static_cast<int>(lead + line.size()), "expected ']'");
        section = std::string(trim(line.substr(1, line.size() - 2)));
        if (section.empty()) fail(line_no, static_cast<int>(lead + 2), "empty section name");
        continue;
      }
      auto eq = line.find('=');
      if (eq == std::string_view::npos) fail(line_no, static_cast<int>(lead + 1), "expected 'key = value'");
      std::string key(trim(line.substr(0, eq)));
      if (key.empty()) fail(line_no, static_cast<int>(lead + 1), "missing key");
      std::size_t vlead = 0;
      std::string_view value = trim(line.substr(eq + 1), &vlead);
      int column = static_cast<int>(lead + eq + 1 + vlead + 1);
      if (value.empty()) fail(line_no, column, "missing value for '" + key + "'");
      std::string full = section.empty() ? key : section + "." + key;
      if (map_.count(full)) fail(line_no, static_cast<int>(lead + 1), "duplicate key '" + full + "'");
      map_[full] = Entry{std::string(value), line_no, column, false};
    }
  }

  Entry* find(const std::string& key) {
    auto it = map_.find(key);
    if (it == map_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  void reject_unused() const {
    for (const auto& [key, e] : map_)
      if (!e.used) fail(e.line, e.column, "unknown key '" + key + "'");
  }

 private:
  std::map<std::string, Entry> map_;
};

Rational rational_at(const Entry& e, std::string_view text, int offset = 0) {
  try {
    return parse_rational(text);
  } catch (const Error&) {
    fail(e.line, e.column + offset, std::string("bad rational '") + std::string(text) + "'");
  }
}

std::vector<std::string_view> split_list(const Entry& e, std::size_t expected, std::vector<int>* offsets) {
  std::vector<std::string_view> parts;
  std::string_view v = e.value;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = v.find(',', start);
    std::string_view piece = v.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    std::size_t lead = 0;
    parts.push_back(trim(piece, &lead));
    offsets->push_back(static_cast<int>(start + lead));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != expected)
    fail(e.line, e.column, "expected " + std::to_string(expected) + " comma-separated values");
  return parts;
}

Point2q point_at(const Entry& e) {
  std::vector<int> off;
  auto parts = split_list(e, 2, &off);
  return {rational_at(e, parts[0], off[0]), rational_at(e, parts[1], off[1])};
}

double number_at(const Entry& e, std::string_view text, int offset) {
  return to_double(rational_at(e, text, offset));
}

int int_at(const Entry& e, int min_value) {
  Rational q = rational_at(e, e.value);
  if (q.get_den() != 1 || q < min_value || q > 1000000)
    fail(e.line, e.column, "expected an integer >= " + std::to_string(min_value));
  return static_cast<int>(q.get_num().get_si());
}

}  // namespace

SceneConfig parse_config(std::string_view text) {
  Entries entries(text);
  auto require = [&](const std::string& key) -> Entry& {
    Entry* e = entries.find(key);
    if (!e) throw Error(ErrorKind::ConfigError, "missing key '" + key + "'");
    return *e;
  };

  Radiant<Rational> radiant;
  Entry* point = entries.find("radiant.point");
  Entry* dir = entries.find("radiant.dir");
  if (point && dir) fail(dir->line, 1, "radiant has both 'point' and 'dir'");
  if (point)
    radiant = FiniteRadiant<Rational>{point_at(*point)};
  else if (dir)
    radiant = RadiantAtInfinity<Rational>{point_at(*dir)};
  else
    throw Error(ErrorKind::ConfigError, "missing key 'radiant.point' or 'radiant.dir'");

  Mirror<Rational> mirror;
  Entry* center = entries.find("mirror.circle.center");
  Entry* lpoint = entries.find("mirror.line.point");
  if (center && lpoint) fail(lpoint->line, 1, "mirror has both a circle and a line");
  if (center) {
    Entry* radius = entries.find("mirror.circle.radius");
    Entry* radius_sq = entries.find("mirror.circle.radius_sq");
    if (radius && radius_sq) fail(radius_sq->line, 1, "give either 'radius' or 'radius_sq'");
    if (!radius && !radius_sq) throw Error(ErrorKind::ConfigError, "missing key 'mirror.circle.radius'");
    Rational rsq;
    if (radius) {
      Rational r = rational_at(*radius, radius->value);
      if (r <= 0) fail(radius->line, radius->column, "radius must be positive");
      rsq = r * r;
    } else {
      rsq = rational_at(*radius_sq, radius_sq->value);
      if (rsq <= 0) fail(radius_sq->line, radius_sq->column, "radius_sq must be positive");
    }
    mirror = Circle2q{point_at(*center), rsq};
  } else if (lpoint) {
    mirror = Line2q{point_at(*lpoint), point_at(require("mirror.line.dir"))};
  } else {
    throw Error(ErrorKind::ConfigError, "missing key 'mirror.circle.center' or 'mirror.line.point'");
  }

  Entry& n_entry = require("scene.n");
  Rational n = rational_at(n_entry, n_entry.value);

  SceneConfig cfg;
  try {
    cfg.scene = Sceneq::make(std::move(radiant), std::move(mirror), n);
  } catch (const Error& e) {
    fail(n_entry.line, n_entry.column, e.what());
  }

  RenderSpec& r = cfg.render;
  if (Entry* e = entries.find("render.viewport")) {
    std::vector<int> off;
    auto p = split_list(*e, 4, &off);
    r.viewport = {number_at(*e, p[0], off[0]), number_at(*e, p[1], off[1]), number_at(*e, p[2], off[2]),
                  number_at(*e, p[3], off[3])};
    if (!(r.viewport.xmax > r.viewport.xmin && r.viewport.ymax > r.viewport.ymin))
      fail(e->line, e->column, "viewport must be xmin, ymin, xmax, ymax with positive extent");
  }
  if (Entry* e = entries.find("render.size")) {
    std::vector<int> off;
    auto p = split_list(*e, 2, &off);
    Entry w = *e, h = *e;
    w.value = p[0];
    h.value = p[1];
    h.column += off[1];
    r.width = int_at(w, 1);
    r.height = int_at(h, 1);
  }
  if (Entry* e = entries.find("render.rays")) r.rays = int_at(*e, 0);
  if (Entry* e = entries.find("render.grid")) r.grid = int_at(*e, 16);
  if (Entry* e = entries.find("render.envelope")) r.envelope = int_at(*e, 0);
  for (auto& [layer, color] : r.colors) {
    if (Entry* e = entries.find("render.color." + layer)) {
      for (char c : e->value)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '#'))
          fail(e->line, e->column, "colors are CSS names or #rrggbb");
      color = e->value;
    }
  }
  entries.reject_unused();
  return cfg;
}

SceneConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string print_config(const SceneConfig& c) {
  std::ostringstream out;
  auto pt = [](const Point2q& p) { return to_string(p.x) + ", " + to_string(p.y); };
  out << "[radiant]\n";
  if (c.scene.finite_radiant())
    out << "point = " << pt(c.scene.radiant_point()) << "\n";
  else
    out << "dir = " << pt(std::get<RadiantAtInfinity<Rational>>(c.scene.radiant).dir) << "\n";
  out << "\n[mirror]\n";
  if (c.scene.circle_mirror()) {
    const auto& circle = c.scene.circle();
    out << "circle.center = " << pt(circle.center) << "\n";
    if (auto r = exact_sqrt(circle.radius_sq))
      out << "circle.radius = " << to_string(*r) << "\n";
    else
      out << "circle.radius_sq = " << to_string(circle.radius_sq) << "\n";
  } else {
    out << "line.point = " << pt(c.scene.line().base) << "\n";
    out << "line.dir = " << pt(c.scene.line().dir) << "\n";
  }
  out << "\n[scene]\nn = " << to_string(c.scene.n) << "\n";
  const RenderSpec& r = c.render;
  out << "\n[render]\n";
  out << "viewport = " << fmt6(r.viewport.xmin) << ", " << fmt6(r.viewport.ymin) << ", " << fmt6(r.viewport.xmax)
      << ", " << fmt6(r.viewport.ymax) << "\n";
  out << "size = " << r.width << ", " << r.height << "\n";
  out << "rays = " << r.rays << "\n";
  out << "grid = " << r.grid << "\n";
  out << "envelope = " << r.envelope << "\n";
  for (const auto& [layer, color] : r.colors) out << "color." << layer << " = " << color << "\n";
  return out.str();
}

}  // namespace caustica
