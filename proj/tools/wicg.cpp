// wicg: perfect state transfer in weighted integral circulant graphs.
//
//   wicg spectrum  [--input spec.json] [--check]
//   wicg pst       [--input spec.json] [--trace T_MAX STEPS]
//   wicg fidelity  [--input spec.json] --from A --to B (--time T | --trace T_MAX STEPS)
//   wicg census    N
//   wicg construct N A FILLER [--base d1,d2,...]
//
// Every subcommand accepts --format text|json. Graph specs are read from
// --input or standard input.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wicg/cli.hpp"

namespace {

std::string read_spec_text(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path);
  if (!in) throw wicg::SpecError("cannot open input file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<wicg::cli::TraceRequest> trace_from(const std::vector<double>& args) {
  if (args.empty()) return std::nullopt;
  if (args[1] < 2 || args[1] != static_cast<double>(static_cast<std::int64_t>(args[1]))) {
    throw wicg::SpecError("--trace STEPS must be an integer >= 2");
  }
  return wicg::cli::TraceRequest{args[0], static_cast<std::int64_t>(args[1])};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perfect state transfer in weighted integral circulant graphs"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string input;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* spectrum = app.add_subcommand("spectrum", "Exact or numeric eigenvalues of a graph spec");
  bool check = false;
  spectrum->add_option("--input", input, "Graph spec file (default: stdin)");
  spectrum->add_flag("--check", check, "Cross-validate exact and numeric spectra");

  auto* pst = app.add_subcommand("pst", "Decide perfect state transfer and certify it");
  std::vector<double> pst_trace;
  pst->add_option("--input", input, "Graph spec file (default: stdin)");
  pst->add_option("--trace", pst_trace, "Append a fidelity trace: T_MAX STEPS")->expected(2);

  auto* fid = app.add_subcommand("fidelity", "Transfer fidelity between two vertices");
  std::int64_t from = 0, to = 0;
  std::optional<double> time;
  std::vector<double> fid_trace;
  fid->add_option("--input", input, "Graph spec file (default: stdin)");
  fid->add_option("--from", from, "Source vertex")->required();
  fid->add_option("--to", to, "Target vertex")->required();
  fid->add_option("--time", time, "Evolution time in radians");
  fid->add_option("--trace", fid_trace, "Sample on a grid: T_MAX STEPS")->expected(2);

  auto* census = app.add_subcommand("census", "Enumerate unweighted divisor sets and check the count laws");
  std::int64_t census_n = 0;
  census->add_option("n", census_n, "Graph order")->required();

  auto* construct = app.add_subcommand("construct", "Build a weighted graph with guaranteed PST");
  std::int64_t construct_n = 0, filler = 4;
  int selector = 1;
  std::vector<std::int64_t> base;
  construct->add_option("n", construct_n, "Even graph order")->required();
  construct->add_option("a", selector, "Odd weight goes on divisor n/2^a")->required()->check(CLI::IsMember({1, 2}));
  construct->add_option("filler", filler, "Weight (multiple of 4) for the other divisors")->required();
  construct->add_option("--base", base, "Divisors to weight (default: all proper divisors)")->delimiter(',');

  for (auto* sub : {spectrum, pst, fid, census, construct}) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : wicg::cli::kUsageError;
  }

  try {
    wicg::cli::Report report;
    if (*spectrum) {
      report = wicg::cli::cmd_spectrum(wicg::parse_spec(read_spec_text(input)), check);
    } else if (*pst) {
      report = wicg::cli::cmd_pst(wicg::parse_spec(read_spec_text(input)), trace_from(pst_trace));
    } else if (*fid) {
      report = wicg::cli::cmd_fidelity(wicg::parse_spec(read_spec_text(input)), from, to, time, trace_from(fid_trace));
    } else if (*census) {
      report = wicg::cli::cmd_census(census_n);
    } else if (*construct) {
      std::optional<wicg::DivisorSet> base_set;
      if (!base.empty()) base_set = wicg::make_divisor_set(construct_n, base);
      report = wicg::cli::cmd_construct(construct_n, selector, filler, base_set);
    }
    if (format == "json") {
      std::cout << report.machine.dump(2) << "\n";
    } else {
      std::cout << report.text;
    }
    return report.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wicg::cli::kUsageError;
  }
}
