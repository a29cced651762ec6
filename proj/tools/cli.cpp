#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "gaes/gaes.hpp"

namespace gaes::cli {

namespace {

// Error carrying the exit code it should produce.
struct CommandError : std::runtime_error {
  CommandError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CommandError(kData, "cannot read input file: " + path);
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (out) {
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.close();
  }
  if (!out) {
    std::error_code ec;
    std::filesystem::remove(path, ec);
    throw CommandError(kData, "cannot write output file: " + path);
  }
}

Block parse_hex_arg(const std::string& name, const std::string& text) {
  try {
    return parse_hex_block(text);
  } catch (const std::invalid_argument& e) {
    throw CommandError(kUsage, name + ": " + e.what());
  }
}

Block random_block(std::random_device& rd) {
  Block b{};
  for (std::size_t i = 0; i < b.size(); i += 4) {
    const auto v = rd();
    for (std::size_t j = 0; j < 4; ++j) {
      b[i + j] = static_cast<std::uint8_t>(v >> (8 * j));
    }
  }
  return b;
}

// Newline-delimited records; a trailing newline does not start a new record.
std::vector<std::vector<std::uint8_t>> split_records(const std::vector<std::uint8_t>& data) {
  std::vector<std::vector<std::uint8_t>> records;
  auto start = data.begin();
  while (start != data.end()) {
    auto nl = std::find(start, data.end(), std::uint8_t{'\n'});
    records.emplace_back(start, nl);
    if (records.back().empty()) {
      throw CommandError(kData, "record " + std::to_string(records.size()) + " is empty");
    }
    start = nl == data.end() ? nl : nl + 1;
  }
  return records;
}

std::size_t resolve_workers(const std::optional<std::size_t>& flag) { return flag ? *flag : default_workers(); }

struct EncryptArgs {
  std::string key;
  std::optional<std::string> iv;
  bool per_message_iv = false;
  std::string in;
  std::string out;
  bool raw = false;
  std::optional<std::size_t> workers;
};

int cmd_encrypt(const EncryptArgs& a, std::ostream& out) {
  const Block key = parse_hex_arg("--key", a.key);
  if (a.iv && a.per_message_iv) {
    throw CommandError(kUsage, "--iv and --per-message-iv are mutually exclusive");
  }
  std::optional<Block> fixed_iv;
  if (a.iv) {
    fixed_iv = parse_hex_arg("--iv", *a.iv);
  }

  const std::vector<std::uint8_t> input = read_file(a.in);
  if (input.empty()) {
    throw CommandError(kData, "input file is empty: " + a.in);
  }
  std::vector<std::vector<std::uint8_t>> records;
  if (a.raw) {
    records.push_back(input);
  } else {
    records = split_records(input);
  }

  const MessageBatch batch = pad_zero(records);
  std::random_device rd;
  IVSet ivs = IVSet::shared(fixed_iv ? *fixed_iv : Block{});
  if (a.per_message_iv) {
    std::vector<Block> rows(batch.n_messages());
    for (auto& r : rows) r = random_block(rd);
    ivs = IVSet::per_message(std::move(rows));
  } else if (!fixed_iv) {
    ivs = IVSet::shared(random_block(rd));
  }

  CipherContainer c;
  c.payload = encrypt_batch_parallel(key, ivs, batch, resolve_workers(a.workers));
  c.ivs = std::move(ivs);
  for (auto len : batch.original_lens) {
    if (len > std::numeric_limits<std::uint32_t>::max()) {
      throw CommandError(kData, "record too long for container");
    }
    c.lengths.push_back(static_cast<std::uint32_t>(len));
  }
  const auto bytes = write_container(c);
  write_file(a.out, bytes);
  out << "N=" << c.n_messages() << " M=" << c.padded_len() << " bytes=" << bytes.size() << '\n';
  return kOk;
}

struct DecryptArgs {
  std::string key;
  std::string in;
  std::string out;
  bool raw = false;
  std::optional<std::size_t> workers;
};

int cmd_decrypt(const DecryptArgs& a, std::ostream& out) {
  const Block key = parse_hex_arg("--key", a.key);
  const std::vector<std::uint8_t> input = read_file(a.in);
  CipherContainer c;
  try {
    c = read_container(input);
  } catch (const FormatError& e) {
    throw CommandError(kData, e.what());
  }
  const ByteGrid plain = decrypt_batch_parallel(key, c.ivs, c.payload, resolve_workers(a.workers));
  const std::vector<std::size_t> lens(c.lengths.begin(), c.lengths.end());
  std::vector<std::uint8_t> result;
  for (const auto& m : extract_messages(plain, lens)) {
    result.insert(result.end(), m.begin(), m.end());
    if (!a.raw) {
      result.push_back('\n');
    }
  }
  write_file(a.out, result);
  out << "N=" << c.n_messages() << " M=" << c.padded_len() << " bytes=" << result.size() << '\n';
  return kOk;
}

void print_grid(std::ostream& out, std::span<const std::uint8_t> values, std::size_t per_row) {
  for (std::size_t i = 0; i < values.size(); i += per_row) {
    out << to_hex(values.subspan(i, std::min(per_row, values.size() - i)), " ") << '\n';
  }
}

void print_matrix(std::ostream& out, const GFMatrix& m) {
  const MixCoefficients c = mix_coefficients(m);
  for (const auto& row : c) {
    print_grid(out, row, row.size());
  }
}

int cmd_tables(const std::string& which, std::ostream& out) {
  const CipherTables& t = CipherTables::standard();
  if (which == "sbox") {
    print_grid(out, t.sboxes.forward, 16);
  } else if (which == "sbox-inv") {
    print_grid(out, t.sboxes.inverse, 16);
  } else if (which == "rcon") {
    print_grid(out, round_constants(), kRounds);
  } else if (which == "mix") {
    print_matrix(out, t.mix.forward);
  } else if (which == "mix-inv") {
    print_matrix(out, t.mix.inverse);
  } else {
    throw CommandError(kUsage, "unknown table: " + which);
  }
  return kOk;
}

int cmd_selftest(std::ostream& out) {
  const auto results = run_selftest();
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << '\n';
  }
  const bool ok = all_passed(results);
  out << (ok ? "all checks passed" : "self-test FAILED") << '\n';
  return ok ? kOk : kSelfTest;
}

struct BenchArgs {
  std::string sweep = "count";
  std::size_t reps = 5;
  std::size_t warmup = 1;
  std::optional<std::string> out;
  std::optional<std::size_t> workers;
  std::uint64_t seed = 1;
  std::vector<std::size_t> points;
  bool no_baseline = false;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  bench::SweepConfig cfg;
  if (a.sweep == "count") {
    cfg = bench::SweepConfig::count_sweep();
  } else if (a.sweep == "length") {
    cfg = bench::SweepConfig::length_sweep();
  } else if (a.sweep == "workers") {
    cfg = bench::SweepConfig::worker_sweep();
    if (a.workers) {
      cfg.points.clear();
      for (std::size_t w = 1; w < *a.workers; w *= 2) cfg.points.push_back(w);
      cfg.points.push_back(*a.workers);
    }
  } else {
    throw CommandError(kUsage, "unknown sweep: " + a.sweep);
  }
  if (!a.points.empty()) {
    cfg.points = a.points;
  }
  if (a.no_baseline) {
    cfg.include_baseline = false;
  }
  cfg.repetitions = a.reps;
  cfg.warmup = a.warmup;
  cfg.seed = a.seed;
  if (cfg.kind != bench::SweepKind::workers) {
    cfg.workers = resolve_workers(a.workers);
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw CommandError(kUsage, e.what());
  }

  std::vector<bench::BenchRecord> records;
  try {
    switch (cfg.kind) {
      case bench::SweepKind::count: records = bench::run_count_sweep(cfg); break;
      case bench::SweepKind::length: records = bench::run_length_sweep(cfg); break;
      case bench::SweepKind::workers: records = bench::run_worker_sweep(cfg); break;
    }
  } catch (const std::runtime_error& e) {
    throw CommandError(kSelfTest, e.what());
  }
  for (const auto& r : records) {
    if (r.timer_limited) {
      err << "warning: timer resolution limited point n=" << r.n_messages << " len=" << r.message_len_bytes << '\n';
    }
  }
  const std::string csv = bench::emit_csv(records, cfg.seed);
  if (a.out) {
    write_file(*a.out, {reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()});
    out << "wrote " << records.size() << " records to " << *a.out << '\n';
  } else {
    out << csv;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"AES-128-CBC built from GF(2^8) algebra, vectorized over message batches", "gaes"};
  app.require_subcommand(1);

  EncryptArgs enc;
  auto* encrypt = app.add_subcommand("encrypt", "Encrypt newline-delimited records into a container");
  encrypt->add_option("--key", enc.key, "Key as 32 hex digits")->required();
  encrypt->add_option("--iv", enc.iv, "Shared IV as 32 hex digits (default: random)");
  encrypt->add_flag("--per-message-iv", enc.per_message_iv, "Random IV per record");
  encrypt->add_option("--in", enc.in, "Input file")->required();
  encrypt->add_option("--out", enc.out, "Output container")->required();
  encrypt->add_flag("--raw", enc.raw, "Treat the whole input as one message");
  encrypt->add_option("--workers", enc.workers, "Worker threads")->check(CLI::PositiveNumber);

  DecryptArgs dec;
  auto* decrypt = app.add_subcommand("decrypt", "Decrypt a container back to records");
  decrypt->add_option("--key", dec.key, "Key as 32 hex digits")->required();
  decrypt->add_option("--in", dec.in, "Input container")->required();
  decrypt->add_option("--out", dec.out, "Output file")->required();
  decrypt->add_flag("--raw", dec.raw, "Write messages back to back without newlines");
  decrypt->add_option("--workers", dec.workers, "Worker threads")->check(CLI::PositiveNumber);

  std::string which;
  auto* tables = app.add_subcommand("tables", "Print a generated table");
  tables->add_option("--which", which, "sbox, sbox-inv, rcon, mix or mix-inv")->required();

  auto* selftest = app.add_subcommand("selftest", "Run the known-answer suite");

  BenchArgs ben;
  auto* benchmark = app.add_subcommand("bench", "Run a throughput sweep and emit CSV");
  benchmark->add_option("--sweep", ben.sweep, "count, length or workers");
  benchmark->add_option("--reps", ben.reps, "Timed repetitions per point (>= 3)");
  benchmark->add_option("--warmup", ben.warmup, "Untimed warmup calls per point");
  benchmark->add_option("--out", ben.out, "CSV output file (default: stdout)");
  benchmark->add_option("--workers", ben.workers, "Worker threads (max for the worker sweep)")
      ->check(CLI::PositiveNumber);
  benchmark->add_option("--seed", ben.seed, "Seed for random keys and messages");
  benchmark->add_option("--points", ben.points, "Override the sweep points");
  benchmark->add_flag("--no-baseline", ben.no_baseline, "Skip the scalar baseline in the count sweep");

  std::vector<std::string> argv_storage{"gaes"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*encrypt) return cmd_encrypt(enc, out);
    if (*decrypt) return cmd_decrypt(dec, out);
    if (*tables) return cmd_tables(which, out);
    if (*selftest) return cmd_selftest(out);
    if (*benchmark) return cmd_bench(ben, out, err);
  } catch (const CommandError& e) {
    err << "error: " << e.what() << '\n';
    return e.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}

}  // namespace gaes::cli
