#include "surgery/executor.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace surgery;

std::vector<long> parse_range(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(std::stol(part));
      continue;
    }
    const long lo = std::stol(part.substr(0, dots));
    const long hi = std::stol(part.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty range " + part);
    for (long n = lo; n <= hi; ++n) out.push_back(n);
  }
  if (out.empty()) throw std::invalid_argument("no values in --n");
  return out;
}

int check_config(int p, int q) {
  try {
    std::cout << describe_configuration(p, q);
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int run(const std::vector<std::string>& scripts, const std::string& range, const std::string& emit, bool verify) {
  std::vector<long> ns;
  try {
    ns = parse_range(range);
  } catch (const std::exception& e) {
    std::cerr << "error: bad --n value '" << range << "': " << e.what() << "\n";
    return 2;
  }
  std::vector<Report> reports;
  for (const std::string& path : scripts) {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "error: cannot open " << path << "\n";
      return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::filesystem::path fs_path(path);
    PipelineScript script;
    try {
      script = parse_script(buffer.str(), file_loader(fs_path.parent_path().string()));
    } catch (const ParseError& e) {
      std::cerr << path << ":" << e.line() << ":" << e.column() << ": error: " << e.message() << "\n";
      return 2;
    }
    for (long n : ns) {
      try {
        reports.push_back(execute(script, n, fs_path.stem().string()));
      } catch (const ExecutionError& e) {
        std::cerr << path << ": error: " << e.what() << "\n";
        return 2;
      }
    }
  }

  std::ostringstream full;
  for (const Report& r : reports) full << r.text() << "\n";
  if (emit.empty()) {
    std::cout << full.str();
  } else {
    std::ofstream out(emit);
    if (!out) {
      std::cerr << "error: cannot write " << emit << "\n";
      return 2;
    }
    out << full.str();
    for (const Report& r : reports) {
      std::cout << "== " << r.script << " (n = " << r.n << ") ==\n" << r.final_section() << "\n";
    }
  }

  bool failed = false;
  for (const Report& r : reports) {
    for (const AssertionOutcome& a : r.assertions) {
      if (a.passed) continue;
      failed = true;
      if (verify) std::cerr << r.script << " n=" << r.n << ": assertion failed at line " << a.line << ": " << a.statement << " (" << a.detail << ")\n";
    }
  }
  if (reports.size() >= 2) std::cout << nondiffeo_certificate(reports).str();
  if (verify) std::cout << (failed ? "verify: FAILED\n" : "verify: all assertions passed\n");
  return verify && failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surgery calculus for rational blow-down constructions"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Execute surgery scripts");
  std::vector<std::string> scripts;
  std::string range = "1";
  std::string emit;
  bool verify = false;
  run_cmd->add_option("scripts", scripts, "Script files")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--n", range, "Twist parameter: 3, 1..10 or 1,4,7");
  run_cmd->add_option("--emit", emit, "Write full reports to this file");
  run_cmd->add_flag("--verify", verify, "Exit 1 if any assertion fails");

  auto* check_cmd = app.add_subcommand("check-config", "Describe the configuration C(p,q)");
  int p = 0;
  int q = 0;
  check_cmd->add_option("p", p)->required();
  check_cmd->add_option("q", q)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (*check_cmd) return check_config(p, q);
  return run(scripts, range, emit, verify);
}
