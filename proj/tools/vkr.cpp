// vkr: homology of braid closures and of singular braids.
//
//   vkr homfly-homology "2: 1 1 1"
//   vkr sln-homology "2: 1 1 1" --N 2
//   vkr vassiliev "2: 1! 1 1" --format json
//   vkr oracle "3: 1 -2 1 -2"
//   vkr compare "2: 1 1 1"
//
// Exit codes: 0 ok or match, 1 mismatch, 2 input error, 3 internal invariant violation.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vkr/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Homology of braid closures and singular braids"};
  app.require_subcommand(1);

  vkr::InputEcho in;
  std::string format = "text";
  bool no_simplify = false;
  std::string order;
  std::uint64_t seed = 0;

  for (const auto& name : vkr::subcommands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("word", in.word, "braid word \"n: l1 l2 ...\", letters +-i or i!")->required();
    if (name == "sln-homology")
      sub->add_option("--N", in.N, "sl_N rank")->required()->check(CLI::PositiveNumber);
    else if (name != "homfly-homology")
      sub->add_option("--N", in.N, "sl_N rank (default: HOMFLY-PT)")->check(CLI::PositiveNumber);
    sub->add_option("--max-degree", in.max_degree, "top degree of the window (default: automatic)");
    sub->add_option("--stabilization-margin", in.margin, "empty degrees required at the top of the window")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--no-simplify", no_simplify, "skip Gaussian elimination");
    sub->add_option("--order", order, "cone order of the singular letters, e.g. 2,1");
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", seed, "seed for the randomized conjugation self-check of compare");
    sub->callback([&in, name] { in.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? vkr::kOk : vkr::kInputError;
  }

  try {
    in.simplify = !no_simplify;
    for (const auto* sub : app.get_subcommands())
      if (sub->count("--seed")) in.seed = seed;
    if (!order.empty()) {
      std::string tok;
      for (std::size_t p = 0; p <= order.size(); ++p) {
        if (p == order.size() || order[p] == ',') {
          std::size_t used = 0;
          int v = 0;
          try {
            v = std::stoi(tok, &used);
          } catch (const std::exception&) {
            throw vkr::InputError("malformed --order '" + order + "'");
          }
          if (used != tok.size()) throw vkr::InputError("malformed --order '" + order + "'");
          in.order.push_back(v);
          tok.clear();
        } else if (order[p] != ' ') {
          tok += order[p];
        }
      }
    }
    vkr::ResultDocument d = vkr::cli_run(in);
    if (format == "json") std::cout << vkr::to_json(d).dump(2) << "\n";
    else std::cout << vkr::to_text(d);
    return vkr::exit_code_of(d);
  } catch (const vkr::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return vkr::kInputError;
  } catch (const vkr::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return vkr::kInputError;
  } catch (const vkr::InvariantViolation& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return vkr::kInvariantViolation;
  } catch (const std::logic_error& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return vkr::kInvariantViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return vkr::kInvariantViolation;
  }
}
