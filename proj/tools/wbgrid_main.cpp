#include <array>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wbgrid/analysis.hpp"
#include "wbgrid/codec.hpp"
#include "wbgrid/errors.hpp"
#include "wbgrid/io.hpp"

namespace {

using namespace wbgrid;

// "P", "P/Q", or "half" (P/Q = n/2).
std::pair<std::uint64_t, std::uint64_t> parse_f(const std::string& spec, std::uint64_t n) {
  if (spec == "half") return {n, 2};
  const auto slash = spec.find('/');
  try {
    std::size_t used = 0;
    const std::string p_part = slash == std::string::npos ? spec : spec.substr(0, slash);
    const std::uint64_t p = std::stoull(p_part, &used);
    if (used != p_part.size()) throw parameter_error("trailing characters in --f");
    std::uint64_t q = 1;
    if (slash != std::string::npos) {
      const std::string q_part = spec.substr(slash + 1);
      q = std::stoull(q_part, &used);
      if (used != q_part.size()) throw parameter_error("trailing characters in --f");
    }
    return {p, q};
  } catch (const parameter_error&) {
    throw;
  } catch (const std::exception&) {
    throw parameter_error("--f must be P, P/Q, or half; got '" + spec + "'");
  }
}

GridFormat parse_format(const std::string& name) {
  if (name == "auto") return GridFormat::auto_detect;
  if (name == "text") return GridFormat::text;
  if (name == "bin") return GridFormat::binary;
  throw parameter_error("--format must be auto, text, or bin; got '" + name + "'");
}

void print_params(const CodeParams& P, std::ostream& out) {
  const double rate = static_cast<double>(P.payload_bits_total) /
                      (static_cast<double>(P.n) * P.n);
  out << "n=" << P.n << " p=" << P.p << " q=" << P.q << '\n'
      << "beta=" << P.beta << " r_blocks=" << P.r_blocks << '\n'
      << "c=" << P.c << " m=" << P.m << '\n'
      << "w_max=" << P.w_max << " alpha=" << P.alpha_num << '/' << P.alpha_den << '\n'
      << "k_row=" << P.k_row << " payload=" << P.payload_bits_total << '\n'
      << "redundancy=" << P.redundancy() << " rate=" << rate << '\n';
}

int run(int argc, char** argv) {
  CLI::App app{"Bounded-weight n x n binary array codec"};
  app.require_subcommand(1);

  std::uint64_t n = 0;
  std::string f_spec;
  std::string in_path, out_path;
  std::string format_name = "auto";

  auto add_nf = [&](CLI::App* cmd) {
    cmd->add_option("--n", n, "array side")->required();
    cmd->add_option("--f", f_spec, "row/column weight cap: P, P/Q, or half")->required();
  };

  CLI::App* cmd_params = app.add_subcommand("params", "print derived parameters");
  add_nf(cmd_params);
  cmd_params->callback([&] {
    const auto [p, q] = parse_f(f_spec, n);
    print_params(derive_params(n, p, q), std::cout);
  });

  CLI::App* cmd_encode = app.add_subcommand("encode", "payload file -> grid file");
  add_nf(cmd_encode);
  cmd_encode->add_option("--in", in_path, "payload file")->required();
  cmd_encode->add_option("--out", out_path, "grid file")->required();
  cmd_encode->add_option("--format", format_name, "grid format: text or bin");
  cmd_encode->callback([&] {
    const auto [p, q] = parse_f(f_spec, n);
    const GridFormat format = parse_format(format_name);
    const Codec codec(derive_params(n, p, q));
    const BitSeq message =
        payload_from_bytes(read_file(in_path), codec.params().payload_bits_total);
    const BitGrid grid = codec.encode(message);
    write_file(out_path, format == GridFormat::binary ? grid_to_binary(grid)
                                                      : grid_to_text(grid));
  });

  CLI::App* cmd_decode = app.add_subcommand("decode", "grid file -> payload file");
  add_nf(cmd_decode);
  cmd_decode->add_option("--in", in_path, "grid file")->required();
  cmd_decode->add_option("--out", out_path, "payload file")->required();
  cmd_decode->add_option("--format", format_name, "grid format: auto, text, or bin");
  cmd_decode->callback([&] {
    const auto [p, q] = parse_f(f_spec, n);
    const Codec codec(derive_params(n, p, q));
    const BitGrid grid =
        grid_from_bytes(read_file(in_path), n, parse_format(format_name));
    write_file(out_path, payload_to_bytes(codec.decode(grid)));
  });

  CLI::App* cmd_verify = app.add_subcommand("verify", "check grid membership");
  add_nf(cmd_verify);
  cmd_verify->add_option("--in", in_path, "grid file")->required();
  cmd_verify->add_option("--format", format_name, "grid format: auto, text, or bin");
  cmd_verify->callback([&] {
    const auto [p, q] = parse_f(f_spec, n);
    const BitGrid grid =
        grid_from_bytes(read_file(in_path), n, parse_format(format_name));
    const MembershipReport report = verify_membership(grid, p, q);
    if (report.ok) {
      std::cout << "OK\n";
      return;
    }
    for (const MembershipViolation& v : report.violations)
      std::cout << (v.axis == MembershipViolation::Axis::row ? "row " : "col ")
                << v.index << " weight " << v.weight << " > " << v.bound << '\n';
    throw corrupt_codeword_error("membership",
                                 std::to_string(report.violations.size()) +
                                     " weight bound violations");
  });

  CLI::App* cmd_analyze = app.add_subcommand("analyze", "oracles and reports");
  cmd_analyze->require_subcommand(1);

  std::uint64_t count_n = 0, count_w = 0;
  bool count_force = false;
  CLI::App* cmd_count = cmd_analyze->add_subcommand("count", "exact bounded-array count");
  cmd_count->add_option("--n", count_n, "array side")->required();
  cmd_count->add_option("--w", count_w, "weight cap")->required();
  cmd_count->add_flag("--force", count_force, "lift the n <= 5 guard");
  cmd_count->callback(
      [&] { std::cout << count_arrays(count_n, count_w, count_force).get_str() << '\n'; });

  std::uint64_t max_n = 6;
  CLI::App* cmd_lemmas = cmd_analyze->add_subcommand("lemmas", "exhaustive swap checks");
  cmd_lemmas->add_option("--max-n", max_n, "exhaustive bound (<= 8)");
  cmd_lemmas->callback([&] {
    const LemmaReport l1 = check_lemma1(max_n);
    const LemmaReport l2 = check_lemma2(max_n);
    std::cout << "intermediate-value: cases=" << l1.cases
              << " counterexamples=" << l1.counterexamples << '\n'
              << "target-search: cases=" << l2.cases
              << " counterexamples=" << l2.counterexamples << '\n'
              << l1.counterexamples + l2.counterexamples << " counterexamples\n";
    if (l1.counterexamples + l2.counterexamples > 0)
      throw corrupt_codeword_error("lemmas", "counterexamples found");
  });

  std::string rates_f, rates_n;
  CLI::App* cmd_rates = cmd_analyze->add_subcommand("rates", "rate table over n");
  cmd_rates->add_option("--f", rates_f, "P, P/Q, or half")->required();
  cmd_rates->add_option("--n", rates_n, "comma-separated list of n")->required();
  cmd_rates->callback([&] {
    std::vector<std::array<std::uint64_t, 3>> entries;
    std::size_t start = 0;
    while (start <= rates_n.size()) {
      const std::size_t comma = rates_n.find(',', start);
      const std::string tok =
          rates_n.substr(start, comma == std::string::npos ? comma : comma - start);
      if (tok.empty()) throw parameter_error("--n has an empty entry");
      std::size_t used = 0;
      std::uint64_t nn = 0;
      try {
        nn = std::stoull(tok, &used);
      } catch (const std::exception&) {
        throw parameter_error("--n entry '" + tok + "' is not a number");
      }
      if (used != tok.size())
        throw parameter_error("--n entry '" + tok + "' is not a number");
      const auto [p, q] = parse_f(rates_f, nn);
      entries.push_back({nn, p, q});
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    print_rate_report(rate_report(entries), std::cout);
  });

  std::uint64_t legacy_n = 0;
  std::string legacy_f;
  CLI::App* cmd_legacy = cmd_analyze->add_subcommand(
      "legacy-c", "divisibility-constrained c vs this scheme's c");
  cmd_legacy->add_option("--n", legacy_n, "array side")->required();
  cmd_legacy->add_option("--f", legacy_f, "P, P/Q, or half")->required();
  cmd_legacy->callback([&] {
    const auto [p, q] = parse_f(legacy_f, legacy_n);
    const auto legacy = legacy_c_bound(legacy_n, p, q);
    if (legacy)
      std::cout << "legacy_c=" << *legacy << '\n';
    else
      std::cout << "legacy_c=none\n";
    std::cout << "explicit_c=" << explicit_c(legacy_n, p, q) << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const corrupt_codeword_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const infeasible_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
