#include "gbundle/examples.hpp"

#include <numeric>

#include "gbundle/error.hpp"

namespace gbundle {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::kInvalidParameter, what);
}

Connection twisted_cycle(int n, Graph fiber, const Permutation& twist) {
  return Connection(cycle_graph(n), std::move(fiber),
                    {{OrientedEdge{0, 1}, twist}});
}

int param(const ExampleSpec& spec, const std::string& key) {
  auto it = spec.params.find(key);
  require(it != spec.params.end(),
          spec.name + " requires parameter '" + key + "'");
  return it->second;
}

}  // namespace

Connection make_dvb1(int n) {
  require(n >= 3, "dvb1 requires n >= 3");
  return twisted_cycle(n, cycle_graph(4),
                       Permutation::from_cycles(4, {{0, 1}, {2, 3}}));
}

Connection make_eg2(int n, int m) {
  require(n >= 3 && m >= 3, "eg2 requires n >= 3 and m >= 3");
  std::vector<int> cycle(m - 1);
  std::iota(cycle.begin(), cycle.end(), 1);
  return twisted_cycle(n, complete_graph(m),
                       Permutation::from_cycles(m, {cycle}));
}

Connection make_eg3(int n, int i) {
  require(n >= 5 && i >= 2, "eg3 requires n >= 5 and i >= 2");
  const int m = i * (i + 1) / 2;
  std::vector<std::vector<int>> cycles;
  int next = 1;
  for (int len = 2; len <= i; ++len) {
    std::vector<int> c(len);
    std::iota(c.begin(), c.end(), next);
    next += len;
    cycles.push_back(std::move(c));
  }
  return twisted_cycle(n, complete_graph(m),
                       Permutation::from_cycles(m, cycles));
}

Connection make_dvb2_torus(int N) {
  require(N >= 4 && N % 2 == 0,
          "dvb2-torus requires an even N >= 4: odd tori break the parity of "
          "diagonal steps around wrapping loops");
  const std::vector<int> orders{N, N};
  Graph base = cayley_graph(orders, {{1, 0}, {0, 1}, {1, 1}});
  AbelianGroup group(orders);
  const Permutation swap = Permutation::from_cycles(2, {{0, 1}});
  std::vector<Connection::Assignment> twists;
  for (int x = 0; x < group.size(); ++x) {
    const int y = group.index_of(group.add(group.element(x), {1, 1}));
    twists.push_back({OrientedEdge{x, y}, swap});
  }
  return Connection(std::move(base), complete_graph(2), twists);
}

std::vector<int> dvb1_tau(int n) {
  require(n >= 3, "dvb1 requires n >= 3");
  std::vector<int> image(4 * n);
  for (int x = 0; x < n; ++x)
    for (int j = 0; j < 4; ++j) image[4 * x + j] = 4 * x + (3 - j);
  return image;
}

Graph dvb2_cayley_target(int N) {
  return cayley_graph({N, N, 2},
                      {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}, {0, 0, 1}});
}

std::string ExampleSpec::slug() const {
  std::string out = name;
  for (char& ch : out)
    if (ch == '-') ch = '_';
  // Parameter order as written in the constructors.
  for (const char* key : {"n", "m", "i", "N"}) {
    auto it = params.find(key);
    if (it != params.end()) out += "_" + std::to_string(it->second);
  }
  return out;
}

Connection make_example(const ExampleSpec& spec) {
  if (spec.name == "dvb1") return make_dvb1(param(spec, "n"));
  if (spec.name == "eg2") return make_eg2(param(spec, "n"), param(spec, "m"));
  if (spec.name == "eg3") return make_eg3(param(spec, "n"), param(spec, "i"));
  if (spec.name == "dvb2-torus") return make_dvb2_torus(param(spec, "N"));
  if (spec.name == "product") {
    const int n = param(spec, "n");
    const int m = param(spec, "m");
    require(n >= 3 && m >= 2, "product requires n >= 3 and m >= 2");
    return identity_connection(cycle_graph(n), complete_graph(m));
  }
  throw Error(ErrorKind::kInvalidParameter,
              "unknown example '" + spec.name +
                  "' (expected dvb1, eg2, eg3, dvb2-torus or product)");
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> e;
    auto eg2 = [&](int n, int m, std::optional<bool> s_ricci,
                   std::optional<bool> four) {
      e.push_back({{"eg2", {{"n", n}, {"m", m}}},
                   {false, true, false, 2, s_ricci, four}});
    };
    eg2(5, 3, true, true);
    eg2(4, 4, std::nullopt, false);
    eg2(5, 4, true, true);
    e.push_back({{"dvb1", {{"n", 5}}},
                 {false, false, true, 1, std::nullopt, std::nullopt}});
    for (auto [n, i] : {std::pair{5, 2}, {5, 3}, {6, 3}})
      e.push_back({{"eg3", {{"n", n}, {"i", i}}},
                   {false, true, false, i, std::nullopt, std::nullopt}});
    e.push_back({{"dvb2-torus", {{"N", 4}}}, {false, false, true, 1, true, true}});
    e.push_back({{"product", {{"n", 5}, {"m", 3}}},
                 {true, true, true, 1, true, true}});
    return e;
  }();
  return entries;
}

std::optional<ExpectedProperties> expected_properties(const ExampleSpec& spec) {
  for (const auto& entry : catalog())
    if (entry.spec.name == spec.name && entry.spec.params == spec.params)
      return entry.expected;
  return std::nullopt;
}

}  // namespace gbundle
