// Writes the bundled synthetic fixtures to a directory so the full CLI
// pipeline can be exercised without any licensed treebank or corpus.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ngdep/conll.hpp"
#include "ngdep/errors.hpp"
#include "ngdep/synthetic.hpp"

namespace fs = std::filesystem;
using namespace ngdep;

int main(int argc, char** argv) {
  CLI::App app{"generate synthetic treebank and corpus fixtures"};
  std::string out_dir;
  std::uint64_t seed = 1;
  int n_train = 400, n_heldout = 100;
  app.add_option("--out", out_dir, "output directory")->required();
  app.add_option("--seed", seed, "generator seed (default 1)");
  app.add_option("--train", n_train, "training sentences (default 400)");
  app.add_option("--heldout", n_heldout, "held-out sentences (default 100)");
  CLI11_PARSE(app, argc, argv);

  try {
    fs::create_directories(out_dir);
    AmbiguousWorld world = make_ambiguous_world(n_train, n_heldout, seed);
    write_conll_file(out_dir + "/train.conll", world.train);
    write_conll_file(out_dir + "/heldout.conll", world.heldout);
    std::ofstream web(out_dir + "/web1t.txt");
    for (const std::string& line : world.web1t_lines) web << line << '\n';
    std::ofstream syn(out_dir + "/syntactic.txt");
    for (const std::string& line : world.syngram_lines) syn << line << '\n';

    auto separable = make_separable_treebank(50, seed);
    write_conll_file(out_dir + "/separable.conll", separable);
    std::cout << "wrote fixtures to " << out_dir << '\n';
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
