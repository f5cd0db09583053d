#include "gbundle/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "gbundle/error.hpp"

namespace gbundle {

namespace {

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + what);
}

int read_int(std::istringstream& in, int line, const char* field) {
  long long value;
  if (!(in >> value)) parse_error(line, std::string("expected integer ") + field);
  if (value < 0 || value > (1 << 24))
    parse_error(line, std::string(field) + " out of range");
  return static_cast<int>(value);
}

void expect_end(std::istringstream& in, int line) {
  std::string extra;
  if (in >> extra) parse_error(line, "unexpected token '" + extra + "'");
}

// Calls `fn(keyword, stream, line_number)` for every non-comment line.
template <typename Fn>
void for_each_line(std::string_view text, Fn fn) {
  std::istringstream all{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(all, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream in(raw);
    std::string keyword;
    if (!(in >> keyword) || keyword[0] == '#') continue;
    fn(keyword, in, line);
  }
}

std::string rest_of_line(std::istringstream& in) {
  std::string rest;
  std::getline(in, rest);
  const auto start = rest.find_first_not_of(" \t");
  return start == std::string::npos ? "" : rest.substr(start);
}

}  // namespace

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.vertex_count() << "\n";
  for (auto [u, v] : g.edges()) out << "e " << u << " " << v << "\n";
  if (g.has_labels())
    for (int v = 0; v < g.vertex_count(); ++v)
      out << "label " << v << " " << g.label(v) << "\n";
  return out.str();
}

Graph parse_graph(std::string_view text) {
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::string> labels;
  bool any_label = false;
  for_each_line(text, [&](const std::string& keyword, std::istringstream& in,
                          int line) {
    if (keyword == "n") {
      if (n >= 0) parse_error(line, "vertex count given twice");
      n = read_int(in, line, "vertex count");
      expect_end(in, line);
      labels.assign(n, "");
      return;
    }
    if (n < 0) parse_error(line, "the first entry must be 'n <count>'");
    if (keyword == "e") {
      const int u = read_int(in, line, "endpoint");
      const int v = read_int(in, line, "endpoint");
      expect_end(in, line);
      if (u >= n || v >= n) parse_error(line, "endpoint out of range");
      edges.emplace_back(u, v);
    } else if (keyword == "label") {
      const int v = read_int(in, line, "vertex");
      if (v >= n) parse_error(line, "vertex out of range");
      labels[v] = rest_of_line(in);
      any_label = true;
    } else {
      parse_error(line, "unknown keyword '" + keyword + "'");
    }
  });
  if (n < 0) throw Error(ErrorKind::kParse, "missing 'n <count>' line");
  try {
    return Graph(n, edges, any_label ? labels : std::vector<std::string>{});
  } catch (const Error& e) {
    throw Error(ErrorKind::kParse, e.what());
  }
}

std::string format_connection(const Connection& c, const std::string& base_ref,
                              const std::string& fiber_ref) {
  std::ostringstream out;
  out << "base " << base_ref << "\n";
  out << "fiber " << fiber_ref << "\n";
  for (const auto& a : c.assignments()) {
    out << "phi " << a.edge.tail << " " << a.edge.head;
    for (int w : a.transport.image()) out << " " << w;
    out << "\n";
  }
  return out.str();
}

Connection parse_connection(std::string_view text,
                            const std::filesystem::path& directory) {
  std::string base_ref, fiber_ref;
  struct Raw {
    int line, x, y;
    std::vector<int> image;
  };
  std::vector<Raw> raw;
  for_each_line(text, [&](const std::string& keyword, std::istringstream& in,
                          int line) {
    if (keyword == "base" || keyword == "fiber") {
      std::string& ref = keyword == "base" ? base_ref : fiber_ref;
      if (!ref.empty()) parse_error(line, keyword + " given twice");
      ref = rest_of_line(in);
      if (ref.empty()) parse_error(line, keyword + " needs a file path");
    } else if (keyword == "phi") {
      Raw r{line, read_int(in, line, "x"), read_int(in, line, "y"), {}};
      int w;
      while (in >> w) r.image.push_back(w);
      if (!in.eof()) parse_error(line, "permutation images must be integers");
      raw.push_back(std::move(r));
    } else {
      parse_error(line, "unknown keyword '" + keyword + "'");
    }
  });
  if (base_ref.empty() || fiber_ref.empty())
    throw Error(ErrorKind::kParse, "connection needs 'base' and 'fiber' lines");
  Graph base = load_graph(directory / base_ref);
  Graph fiber = load_graph(directory / fiber_ref);
  std::vector<Connection::Assignment> assignments;
  for (auto& r : raw) {
    try {
      assignments.push_back(
          {OrientedEdge{r.x, r.y}, Permutation(std::move(r.image))});
    } catch (const Error& e) {
      parse_error(r.line, e.what());
    }
  }
  return Connection(std::move(base), std::move(fiber), assignments);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kParse, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::kInvalidParameter, "cannot write " + path.string());
  }
  out << text;
}

Graph load_graph(const std::filesystem::path& path) {
  try {
    return parse_graph(read_text(path));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kParse) throw;
    throw Error(ErrorKind::kParse, path.string() + ": " + e.what());
  }
}

Connection load_connection(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return parse_connection(text, path.parent_path());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kParse) throw;
    throw Error(ErrorKind::kParse, path.string() + ": " + e.what());
  }
}

std::string to_dot(const Graph& g, std::string_view name) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') out += '\\';
      out += ch;
    }
    return out + "\"";
  };
  std::ostringstream out;
  out << "graph " << quote(std::string(name)) << " {\n";
  for (int v = 0; v < g.vertex_count(); ++v)
    out << "  " << v << " [label=" << quote(g.label(v)) << "];\n";
  for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = hex[h & 0xf];
  return out;
}

}  // namespace gbundle
