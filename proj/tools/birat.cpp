#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "birat/document.hpp"
#include "birat/errors.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw birat::ParseError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Birationality and degree analysis of rational maps between products "
      "of projective spaces"};
  std::string command, input = "-";
  birat::RunOptions opts;
  bool as_json = false;
  app.add_option("command", command,
                 "degree | birational | inverse | rees | sym | sylvester | "
                 "saturate | hilbert | bounds | oracle | syzygies")
      ->required();
  app.add_option("input", input, "map document path ('-' reads stdin)");
  app.add_option("--nmax", opts.n_max, "override the document's sample bound");
  app.add_option("--prime", opts.prime, "override the oracle prime");
  app.add_option("--seed", opts.seed, "override the oracle seed");
  app.add_option("--route", opts.route,
                 "force an analysis route (auto | jacdual | monomial | plane "
                 "| limit | formula)");
  app.add_option("--cap-ydeg", opts.cap_ydeg,
                 "cap jacobian-dual generator y-degrees");
  app.add_flag("--json", as_json, "emit the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    birat::MapDocument doc = birat::parse_document(read_input(input));
    nlohmann::ordered_json rep = birat::run_command(command, doc, opts);
    if (as_json)
      std::cout << rep.dump(2) << "\n";
    else
      std::cout << birat::render_text(rep);
    return 0;
  } catch (const std::exception& e) {
    if (as_json) {
      nlohmann::ordered_json err;
      err["error"] = e.what();
      std::cout << err.dump(2) << "\n";
    }
    std::cerr << "error: " << e.what() << "\n";
    return birat::exit_code_for(e);
  }
}
