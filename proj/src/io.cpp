#include "egsolve/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "egsolve/rng.hpp"

namespace egsolve {

namespace {

// Claimed solution values are unvalidated input; keep them far away from the
// top sentinel so downstream arithmetic stays in range.
constexpr int64_t kMaxClaimedValue = detail::kRawTop / 4;

void append_int(std::string& out, int64_t v) {
  char buf[24];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, static_cast<size_t>(p - buf));
}

void append_uint(std::string& out, uint64_t v) {
  char buf[24];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, static_cast<size_t>(p - buf));
}

struct LineCursor {
  std::string_view text;
  size_t pos = 0;
  size_t line_no = 0;

  // Yields the next non-blank, non-comment line.
  bool next(std::string_view& line) {
    while (pos < text.size()) {
      size_t nl = text.find('\n', pos);
      std::string_view raw = nl == std::string_view::npos
                                 ? text.substr(pos)
                                 : text.substr(pos, nl - pos);
      pos = nl == std::string_view::npos ? text.size() : nl + 1;
      line_no++;
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      if (raw.empty() || raw.front() == '#') continue;
      line = raw;
      return true;
    }
    return false;
  }
};

std::vector<std::string_view> split_fields(std::string_view line,
                                           size_t line_no) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t sp = line.find(' ', start);
    if (sp == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, sp - start));
    start = sp + 1;
  }
  for (std::string_view f : out) {
    if (f.empty()) {
      throw SyntaxError(line_no, "fields must be separated by single spaces");
    }
  }
  return out;
}

template <class T>
T parse_number(std::string_view field, size_t line_no, const char* what) {
  T value{};
  auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(),
                                 value);
  if (ec != std::errc() || p != field.data() + field.size()) {
    throw SyntaxError(line_no, std::string("malformed ") + what + " '" +
                                   std::string(field) + "'");
  }
  return value;
}

}  // namespace

GameArena parse_arena(std::string_view text) {
  LineCursor cursor{text};
  std::string_view line;

  if (!cursor.next(line)) {
    throw SyntaxError(1, "missing 'eg <vertices> <edges>' header");
  }
  auto header = split_fields(line, cursor.line_no);
  if (header.size() != 3 || header[0] != "eg") {
    throw SyntaxError(cursor.line_no, "expected 'eg <vertices> <edges>'");
  }
  const uint32_t num_vertices =
      parse_number<uint32_t>(header[1], cursor.line_no, "vertex count");
  const uint64_t num_edges =
      parse_number<uint64_t>(header[2], cursor.line_no, "edge count");

  std::vector<Owner> owners;
  owners.reserve(num_vertices);
  for (uint32_t i = 0; i < num_vertices; ++i) {
    if (!cursor.next(line)) {
      throw CountMismatchError("declared " + std::to_string(num_vertices) +
                               " vertices, found " + std::to_string(i));
    }
    auto f = split_fields(line, cursor.line_no);
    if (f.size() != 3 || f[0] != "v") {
      throw SyntaxError(cursor.line_no, "expected 'v <id> <owner>'");
    }
    if (parse_number<uint32_t>(f[1], cursor.line_no, "vertex id") != i) {
      throw SyntaxError(cursor.line_no, "vertex ids must be 0..V-1 in order");
    }
    uint32_t o = parse_number<uint32_t>(f[2], cursor.line_no, "owner");
    if (o > 1) throw SyntaxError(cursor.line_no, "owner must be 0 or 1");
    owners.push_back(o == 0 ? Owner::kPlayer0 : Owner::kPlayer1);
  }

  std::vector<Edge> edges;
  edges.reserve(num_edges);
  for (uint64_t i = 0; i < num_edges; ++i) {
    if (!cursor.next(line)) {
      throw CountMismatchError("declared " + std::to_string(num_edges) +
                               " edges, found " + std::to_string(i));
    }
    auto f = split_fields(line, cursor.line_no);
    if (f.size() != 4 || f[0] != "e") {
      throw SyntaxError(cursor.line_no, "expected 'e <src> <dst> <weight>'");
    }
    Edge e;
    uint64_t src = parse_number<uint64_t>(f[1], cursor.line_no, "source id");
    uint64_t dst = parse_number<uint64_t>(f[2], cursor.line_no, "target id");
    if (src > UINT32_MAX) throw DanglingVertexIdError(src);
    if (dst > UINT32_MAX) throw DanglingVertexIdError(dst);
    e.src = static_cast<VertexId>(src);
    e.dst = static_cast<VertexId>(dst);
    e.weight = parse_number<int64_t>(f[3], cursor.line_no, "weight");
    edges.push_back(e);
  }

  if (cursor.next(line)) {
    throw SyntaxError(cursor.line_no,
                      "unexpected record after the declared edge list");
  }
  return GameArena::build(num_vertices, edges, owners);
}

std::string write_arena(const GameArena& arena) {
  std::string out;
  out.reserve(16 + arena.num_vertices() * 8 + arena.num_edges() * 16);
  out += "eg ";
  append_uint(out, arena.num_vertices());
  out += ' ';
  append_uint(out, arena.num_edges());
  out += '\n';
  for (uint32_t v = 0; v < arena.num_vertices(); ++v) {
    out += "v ";
    append_uint(out, v);
    out += arena.is_player0(v) ? " 0\n" : " 1\n";
  }
  for (uint32_t v = 0; v < arena.num_vertices(); ++v) {
    for (auto [t, w] : arena.successors(v)) {
      out += "e ";
      append_uint(out, v);
      out += ' ';
      append_uint(out, t);
      out += ' ';
      append_int(out, w);
      out += '\n';
    }
  }
  return out;
}

SolutionDocument make_solution(const GameArena& arena,
                               const SolveReport& report) {
  SolutionDocument doc;
  const uint32_t n = arena.num_vertices();
  doc.values.resize(n);
  doc.strategy.assign(n, SolutionDocument::kNoTarget);
  Strategy s = extract_strategy(arena, report.measure);
  for (uint32_t v = 0; v < n; ++v) {
    doc.values[v] = report.measure[v];
    if (s.defined(v)) doc.strategy[v] = s.target(arena, v);
  }
  return doc;
}

std::string write_solution(const SolutionDocument& doc) {
  std::string out;
  out.reserve(doc.values.size() * 8);
  for (uint32_t v = 0; v < doc.values.size(); ++v) {
    append_uint(out, v);
    out += ' ';
    if (doc.values[v].is_top()) {
      out += 'T';
    } else {
      append_int(out, doc.values[v].amount());
    }
    if (doc.strategy[v] != SolutionDocument::kNoTarget) {
      out += ' ';
      append_uint(out, doc.strategy[v]);
    }
    out += '\n';
  }
  return out;
}

SolutionDocument parse_solution(std::string_view text) {
  LineCursor cursor{text};
  std::string_view line;
  SolutionDocument doc;
  while (cursor.next(line)) {
    auto f = split_fields(line, cursor.line_no);
    if (f.size() != 2 && f.size() != 3) {
      throw SyntaxError(cursor.line_no, "expected '<id> <value> [<target>]'");
    }
    uint32_t id = parse_number<uint32_t>(f[0], cursor.line_no, "vertex id");
    if (id != doc.values.size()) {
      throw SyntaxError(cursor.line_no, "vertex ids must be 0..V-1 in order");
    }
    if (f[1] == "T") {
      doc.values.push_back(EnergyValue::top());
    } else {
      int64_t v = parse_number<int64_t>(f[1], cursor.line_no, "value");
      if (v < 0 || v > kMaxClaimedValue) {
        throw SyntaxError(cursor.line_no, "value out of range");
      }
      doc.values.push_back(EnergyValue::finite(v));
    }
    if (f.size() == 3) {
      doc.strategy.push_back(
          parse_number<uint32_t>(f[2], cursor.line_no, "strategy target"));
    } else {
      doc.strategy.push_back(SolutionDocument::kNoTarget);
    }
  }
  return doc;
}

ProgressMeasure measure_from_solution(const SolutionDocument& doc) {
  std::vector<int64_t> raw(doc.values.size());
  for (size_t v = 0; v < doc.values.size(); ++v) raw[v] = doc.values[v].raw();
  return ProgressMeasure::from_raw(std::move(raw));
}

Family family_from_name(std::string_view name) {
  if (name == "random") return Family::kRandom;
  if (name == "cyclechain") return Family::kCycleChain;
  if (name == "clique") return Family::kClique;
  throw InvalidSpecError("unknown family '" + std::string(name) + "'");
}

std::string family_name(Family family) {
  switch (family) {
    case Family::kRandom:
      return "random";
    case Family::kCycleChain:
      return "cyclechain";
    case Family::kClique:
      return "clique";
  }
  return "?";
}

namespace {

void validate_spec(const GenSpec& spec) {
  if (spec.n < 1 || spec.n > UINT32_MAX) {
    throw InvalidSpecError("vertex count must be in [1, 2^32)");
  }
  if (!(spec.d >= 1.0)) {
    throw InvalidSpecError("average degree must be at least 1");
  }
  if (spec.wmin > spec.wmax) {
    throw InvalidSpecError("weight range is empty");
  }
  if (!(spec.p0_frac >= 0.0 && spec.p0_frac <= 1.0)) {
    throw InvalidSpecError("player-0 fraction must be in [0, 1]");
  }
  if (spec.family == Family::kClique && spec.n > 16384) {
    throw InvalidSpecError("clique family is limited to 16384 vertices");
  }
  if (spec.family == Family::kRandom &&
      spec.d * static_cast<double>(spec.n) > 1e9) {
    throw InvalidSpecError("requested edge count is too large");
  }
}

std::vector<Owner> draw_owners(SplitMix64& rng, uint64_t n, double p0_frac) {
  uint64_t ppm = static_cast<uint64_t>(llround(p0_frac * 1e6));
  std::vector<Owner> owners(n);
  for (uint64_t v = 0; v < n; ++v) {
    owners[v] = rng.chance_ppm(ppm) ? Owner::kPlayer0 : Owner::kPlayer1;
  }
  return owners;
}

GameArena generate_random(const GenSpec& spec) {
  SplitMix64 rng(spec.seed);
  std::vector<Owner> owners = draw_owners(rng, spec.n, spec.p0_frac);
  uint64_t m = std::max<uint64_t>(
      spec.n, static_cast<uint64_t>(llround(spec.d * spec.n)));
  std::vector<Edge> edges;
  edges.reserve(m);
  for (uint64_t v = 0; v < spec.n; ++v) {
    VertexId dst = static_cast<VertexId>(rng.next_below(spec.n));
    edges.push_back(Edge{static_cast<VertexId>(v), dst,
                         rng.next_in(spec.wmin, spec.wmax)});
  }
  for (uint64_t i = spec.n; i < m; ++i) {
    VertexId src = static_cast<VertexId>(rng.next_below(spec.n));
    VertexId dst = static_cast<VertexId>(rng.next_below(spec.n));
    edges.push_back(Edge{src, dst, rng.next_in(spec.wmin, spec.wmax)});
  }
  return GameArena::build(static_cast<uint32_t>(spec.n), edges, owners);
}

GameArena generate_cycle_chain(const GenSpec& spec) {
  SplitMix64 rng(spec.seed);
  std::vector<Owner> owners = draw_owners(rng, spec.n, spec.p0_frac);
  auto clamp = [&](int64_t w) { return std::clamp(w, spec.wmin, spec.wmax); };

  struct Block {
    uint64_t start;
    uint64_t len;
  };
  std::vector<Block> cycles;
  uint64_t start = 0;
  uint64_t len = 2;
  while (start < spec.n) {
    uint64_t take = std::min(len, spec.n - start);
    cycles.push_back(Block{start, take});
    start += take;
    if (len < spec.n) len *= 2;
  }

  std::vector<Edge> edges;
  edges.reserve(spec.n + cycles.size());
  for (size_t ci = 0; ci < cycles.size(); ++ci) {
    const Block& b = cycles[ci];
    for (uint64_t i = 0; i + 1 < b.len; ++i) {
      edges.push_back(Edge{static_cast<VertexId>(b.start + i),
                           static_cast<VertexId>(b.start + i + 1),
                           clamp(-1)});
    }
    int64_t closing = ci % 2 == 0 ? clamp(static_cast<int64_t>(b.len) - 1)
                                  : clamp(-1);
    edges.push_back(Edge{static_cast<VertexId>(b.start + b.len - 1),
                         static_cast<VertexId>(b.start), closing});
    if (ci + 1 < cycles.size()) {
      edges.push_back(Edge{static_cast<VertexId>(b.start + b.len - 1),
                           static_cast<VertexId>(cycles[ci + 1].start),
                           clamp(0)});
    }
  }
  return GameArena::build(static_cast<uint32_t>(spec.n), edges, owners);
}

GameArena generate_clique(const GenSpec& spec) {
  SplitMix64 rng(spec.seed);
  std::vector<Owner> owners = draw_owners(rng, spec.n, spec.p0_frac);
  std::vector<Edge> edges;
  edges.reserve(spec.n * spec.n);
  for (uint64_t u = 0; u < spec.n; ++u) {
    for (uint64_t v = 0; v < spec.n; ++v) {
      edges.push_back(Edge{static_cast<VertexId>(u), static_cast<VertexId>(v),
                           rng.next_in(spec.wmin, spec.wmax)});
    }
  }
  return GameArena::build(static_cast<uint32_t>(spec.n), edges, owners);
}

}  // namespace

GameArena generate(const GenSpec& spec) {
  validate_spec(spec);
  switch (spec.family) {
    case Family::kRandom:
      return generate_random(spec);
    case Family::kCycleChain:
      return generate_cycle_chain(spec);
    case Family::kClique:
      return generate_clique(spec);
  }
  throw InvalidSpecError("unknown family");
}

}  // namespace egsolve
