#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "egsolve/io.hpp"
#include "egsolve/oracle.hpp"
#include "egsolve/solver.hpp"

namespace fs = std::filesystem;
using namespace egsolve;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file '" + path + "'");
  out << data;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(csv);
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Variant variant_from_name(const std::string& name) {
  if (name == "seq") return Variant::kSeq;
  if (name == "sweep") return Variant::kSweep;
  if (name == "frontier") return Variant::kFrontier;
  throw InvalidConfigError("unknown mode '" + name + "'");
}

std::string format_seconds(double s) {
  char buf[32];
  snprintf(buf, sizeof(buf), "%.3f", s);
  return buf;
}

struct SolveArgs {
  std::string arena_file;
  std::string mode = "seq";
  int workers = 4;
  std::string mapping = "vertex";
  uint32_t chunk_size = 0;  // 0: pick from the average degree
  double timeout = 900.0;
  std::string out;
};

SolverOptions make_options(const GameArena& arena, const SolveArgs& a) {
  SolverOptions opt;
  opt.workers = a.workers;
  if (a.mapping == "vertex") {
    opt.mapping = Mapping::per_vertex();
  } else if (a.mapping == "chunk") {
    opt.mapping = Mapping::chunked(
        a.chunk_size == 0 ? choose_chunk_size(arena) : a.chunk_size);
  } else {
    throw InvalidConfigError("unknown mapping '" + a.mapping + "'");
  }
  opt.timeout_seconds = a.timeout;
  opt.debug_checks = debug_checks_enabled_from_env();
  return opt;
}

int cmd_solve(const SolveArgs& a) {
  GameArena arena = parse_arena(read_file(a.arena_file));
  Variant variant = variant_from_name(a.mode);
  SolverOptions opt = make_options(arena, a);
  SolveReport report;
  try {
    report = solve(arena, variant, opt);
  } catch (const TimeoutError&) {
    std::cerr << a.arena_file << ": timed out after "
              << format_seconds(a.timeout) << " s\n";
    return 2;
  }
  std::string text = write_solution(make_solution(arena, report));
  if (a.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    write_file(a.out, text);
  }
  std::cerr << variant_name(report.variant) << " solved '" << a.arena_file
            << "': lifts=" << report.lifts << " rounds=" << report.rounds
            << " time=" << format_seconds(report.wall_seconds) << "s\n";
  return 0;
}

int cmd_verify(const std::string& arena_file, const std::string& solution_file,
               bool with_oracle) {
  GameArena arena = parse_arena(read_file(arena_file));
  SolutionDocument doc = parse_solution(read_file(solution_file));
  if (doc.values.size() != arena.num_vertices()) {
    throw CountMismatchError("solution has " +
                             std::to_string(doc.values.size()) +
                             " records for " +
                             std::to_string(arena.num_vertices()) +
                             " vertices");
  }
  ProgressMeasure claimed = measure_from_solution(doc);
  for (uint32_t v = 0; v < arena.num_vertices(); ++v) {
    if (!epm_condition_holds(arena, claimed, v)) {
      std::cout << "vertex " << v
                << " violates the progress-measure condition\n";
      return 3;
    }
  }
  if (with_oracle) {
    ProgressMeasure least;
    try {
      least = oracle::min_credit_attractor(arena);
    } catch (const TooLargeError& e) {
      std::cerr << "oracle check skipped: " << e.what() << "\n";
      return 4;
    }
    for (uint32_t v = 0; v < arena.num_vertices(); ++v) {
      if (claimed[v] != least[v]) {
        std::cout << "vertex " << v << " is not minimal: claimed "
                  << (claimed[v].is_top() ? std::string("T")
                                          : std::to_string(claimed[v].amount()))
                  << ", least is "
                  << (least[v].is_top() ? std::string("T")
                                        : std::to_string(least[v].amount()))
                  << "\n";
        return 3;
      }
    }
    Strategy strategy = extract_strategy(arena, claimed);
    auto [w0, w1] = winning_sets(claimed);
    if (!oracle::verify_strategy(arena, strategy, w0)) {
      std::cout << "extracted strategy admits a reachable negative cycle\n";
      return 3;
    }
  }
  std::cout << "ok\n";
  return 0;
}

struct GenArgs {
  GenSpec spec;
  std::string family = "random";
  std::string out;
};

int cmd_gen(GenArgs& a) {
  a.spec.family = family_from_name(a.family);
  GameArena arena = generate(a.spec);
  std::string text = write_arena(arena);
  if (a.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    write_file(a.out, text);
  }
  return 0;
}

struct BenchRow {
  std::string instance;
  uint64_t vertices = 0;
  uint64_t edges = 0;
  double avg_degree = 0.0;
  std::string variant;
  std::string mapping;
  int workers = 1;
  double wall_seconds = 0.0;
  std::optional<uint64_t> lifts;
  std::optional<uint64_t> rounds;
  bool timed_out = false;
  std::string error;
};

struct BenchArgs {
  std::vector<std::string> paths;
  std::string modes = "seq,sweep,frontier";
  std::string workers = "1";
  std::string mappings = "vertex";
  std::string chunk_sizes;  // empty: pick from the average degree
  double timeout = 900.0;
  std::string csv;
  std::string json;
};

std::vector<std::string> collect_instances(const std::vector<std::string>& paths) {
  std::vector<std::string> files;
  for (const std::string& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<std::string> dir_files;
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".eg") {
          dir_files.push_back(entry.path().string());
        }
      }
      std::sort(dir_files.begin(), dir_files.end());
      files.insert(files.end(), dir_files.begin(), dir_files.end());
    } else {
      files.push_back(p);
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

int cmd_bench(const BenchArgs& a) {
  std::vector<std::string> files = collect_instances(a.paths);
  std::vector<Variant> variants;
  for (const std::string& m : split_list(a.modes)) {
    variants.push_back(variant_from_name(m));
  }
  std::sort(variants.begin(), variants.end());
  variants.erase(std::unique(variants.begin(), variants.end()),
                 variants.end());
  std::vector<int> worker_counts;
  for (const std::string& w : split_list(a.workers)) {
    worker_counts.push_back(std::stoi(w));
  }
  std::vector<std::string> mappings = split_list(a.mappings);
  std::vector<uint32_t> chunks;
  for (const std::string& c : split_list(a.chunk_sizes)) {
    chunks.push_back(static_cast<uint32_t>(std::stoul(c)));
  }

  std::vector<BenchRow> rows;
  for (const std::string& file : files) {
    BenchRow base;
    base.instance = fs::path(file).filename().string();
    std::optional<GameArena> parsed;
    try {
      parsed = parse_arena(read_file(file));
    } catch (const Error& e) {
      base.error = e.what();
      rows.push_back(base);
      continue;
    }
    const GameArena& arena = *parsed;
    base.vertices = arena.num_vertices();
    base.edges = arena.num_edges();
    base.avg_degree = arena.stats().avg_out_degree;

    auto run_cell = [&](Variant variant, int workers, const Mapping& mapping,
                        const std::string& mapping_label) {
      BenchRow row = base;
      row.variant = variant_name(variant);
      row.workers = workers;
      row.mapping = mapping_label;
      SolverOptions opt;
      opt.workers = workers;
      opt.mapping = mapping;
      opt.timeout_seconds = a.timeout;
      opt.debug_checks = debug_checks_enabled_from_env();
      try {
        SolveReport r = solve(arena, variant, opt);
        row.wall_seconds = r.wall_seconds;
        row.lifts = r.lifts;
        row.rounds = r.rounds;
      } catch (const TimeoutError&) {
        row.timed_out = true;
        row.wall_seconds = a.timeout;
      } catch (const Error& e) {
        row.error = e.what();
      }
      rows.push_back(row);
    };

    for (Variant variant : variants) {
      if (variant == Variant::kSeq) {
        run_cell(variant, 1, Mapping::per_vertex(), "-");
        continue;
      }
      for (int workers : worker_counts) {
        for (const std::string& mapping_name : mappings) {
          if (mapping_name == "vertex") {
            run_cell(variant, workers, Mapping::per_vertex(), "vertex");
          } else if (mapping_name == "chunk") {
            if (chunks.empty()) {
              Mapping m = Mapping::chunked(choose_chunk_size(arena));
              run_cell(variant, workers, m, m.label());
            } else {
              for (uint32_t h : chunks) {
                Mapping m = Mapping::chunked(h);
                run_cell(variant, workers, m, m.label());
              }
            }
          } else {
            throw InvalidConfigError("unknown mapping '" + mapping_name + "'");
          }
        }
      }
    }
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const BenchRow& x, const BenchRow& y) {
                     return std::tie(x.instance, x.variant, x.workers,
                                     x.mapping) <
                            std::tie(y.instance, y.variant, y.workers,
                                     y.mapping);
                   });

  if (!a.json.empty()) {
    nlohmann::json j = nlohmann::json::array();
    for (const BenchRow& r : rows) {
      nlohmann::json o;
      o["instance"] = r.instance;
      o["vertices"] = r.vertices;
      o["edges"] = r.edges;
      o["avg_degree"] = r.avg_degree;
      o["variant"] = r.variant;
      o["mapping"] = r.mapping;
      o["workers"] = r.workers;
      o["wall_time_s"] = r.wall_seconds;
      if (r.lifts) o["lifts"] = *r.lifts; else o["lifts"] = nullptr;
      if (r.rounds) o["rounds"] = *r.rounds; else o["rounds"] = nullptr;
      o["timeout"] = r.timed_out;
      o["error"] = r.error;
      j.push_back(o);
    }
    write_file(a.json, j.dump(2) + "\n");
  }

  std::string csv =
      "instance,vertices,edges,avg_degree,variant,mapping,workers,"
      "wall_time_s,lifts,rounds,timeout,error\n";
  for (const BenchRow& r : rows) {
    char buf[64];
    snprintf(buf, sizeof(buf), "%.2f", r.avg_degree);
    csv += csv_escape(r.instance) + ',' + std::to_string(r.vertices) + ',' +
           std::to_string(r.edges) + ',' + buf + ',' + r.variant + ',' +
           r.mapping + ',' + std::to_string(r.workers) + ',' +
           format_seconds(r.wall_seconds) + ',' +
           (r.lifts ? std::to_string(*r.lifts) : std::string()) + ',' +
           (r.rounds ? std::to_string(*r.rounds) : std::string()) + ',' +
           (r.timed_out ? "1" : "0") + ',' + csv_escape(r.error) + '\n';
  }
  if (!a.csv.empty()) {
    write_file(a.csv, csv);
  } else if (a.json.empty()) {
    std::fwrite(csv.data(), 1, csv.size(), stdout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"energy game solver: minimum initial credits over weighted "
               "two-player arenas"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "solve an arena and emit its solution");
  solve_cmd->add_option("arena", solve_args.arena_file, "arena file")
      ->required();
  solve_cmd->add_option("--mode", solve_args.mode,
                        "seq, sweep, or frontier (default seq)");
  solve_cmd->add_option("--workers", solve_args.workers,
                        "worker threads for parallel modes");
  solve_cmd->add_option("--mapping", solve_args.mapping, "vertex or chunk");
  solve_cmd->add_option("--chunk-size", solve_args.chunk_size,
                        "lanes per vertex for the chunk mapping; 0 = auto");
  solve_cmd->add_option("--timeout", solve_args.timeout,
                        "budget in seconds (default 900)");
  solve_cmd->add_option("--out", solve_args.out,
                        "solution file (default stdout)");

  std::string verify_arena, verify_solution;
  bool verify_oracle = false;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "check a solution against an arena");
  verify_cmd->add_option("arena", verify_arena, "arena file")->required();
  verify_cmd->add_option("solution", verify_solution, "solution file")
      ->required();
  verify_cmd->add_flag("--oracle", verify_oracle,
                       "also check minimality and the extracted strategy "
                       "against the exhaustive oracle");

  GenArgs gen_args;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate an arena");
  gen_cmd->add_option("--n", gen_args.spec.n, "vertex count")->required();
  gen_cmd->add_option("--d", gen_args.spec.d, "target average out-degree");
  gen_cmd->add_option("--wmin", gen_args.spec.wmin, "minimum weight");
  gen_cmd->add_option("--wmax", gen_args.spec.wmax, "maximum weight");
  gen_cmd->add_option("--p0", gen_args.spec.p0_frac,
                      "fraction of player-0 vertices");
  gen_cmd->add_option("--seed", gen_args.spec.seed, "generator seed");
  gen_cmd->add_option("--family", gen_args.family,
                      "random, cyclechain, or clique");
  gen_cmd->add_option("--out", gen_args.out, "arena file (default stdout)");

  BenchArgs bench_args;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "run a solver matrix over instances and tabulate results");
  bench_cmd
      ->add_option("paths", bench_args.paths,
                   "arena files or directories of .eg files")
      ->required();
  bench_cmd->add_option("--modes", bench_args.modes, "comma list of modes");
  bench_cmd->add_option("--workers", bench_args.workers,
                        "comma list of worker counts");
  bench_cmd->add_option("--mappings", bench_args.mappings,
                        "comma list of mappings (vertex, chunk)");
  bench_cmd->add_option("--chunk-sizes", bench_args.chunk_sizes,
                        "comma list of chunk sizes (default auto)");
  bench_cmd->add_option("--timeout", bench_args.timeout,
                        "per-cell budget in seconds (default 900)");
  bench_cmd->add_option("--csv", bench_args.csv, "write rows as CSV");
  bench_cmd->add_option("--json", bench_args.json, "write rows as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve_args);
    if (verify_cmd->parsed()) {
      return cmd_verify(verify_arena, verify_solution, verify_oracle);
    }
    if (gen_cmd->parsed()) return cmd_gen(gen_args);
    if (bench_cmd->parsed()) return cmd_bench(bench_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
