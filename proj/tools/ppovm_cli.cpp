// Copyright 2026 The ppovm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace ppovm::cli;

  CLI::App app{"ppovm: process POVMs for measuring quantum channels"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  Format format = Format::Json;
  const std::map<std::string, Format> formats{{"json", Format::Json}, {"table", Format::Table}};
  app.add_option("--tol", cfg.tol, "numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "PRNG seed for simulate");
  app.add_option("--shots", cfg.shots, "number of shots for simulate");
  app.add_option("--format", format, "report format (json|table)")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description(""))
      ->option_text("json|table");
  app.add_option("--out", cfg.out, "output file");
  app.add_option("--workers", cfg.workers, "threads used by simulate")->check(CLI::PositiveNumber);

  std::string path, kind;
  auto* validate = app.add_subcommand("validate", "check invariants of a state, POVM, channel or PPOVM");
  validate->add_option("kind", kind, "state|povm|channel|ppovm")
      ->required()
      ->check(CLI::IsMember({"state", "povm", "channel", "ppovm"}));
  validate->add_option("path", path, "input JSON")->required();

  std::string direction;
  auto* convert = app.add_subcommand("convert", "convert a channel between Kraus and Choi form");
  convert->add_option("direction", direction, "kraus2choi|choi2kraus")
      ->required()
      ->check(CLI::IsMember({"kraus2choi", "choi2kraus"}));
  convert->add_option("path", path, "channel JSON")->required();

  std::string ppovm_path, channel_path;
  auto* probs = app.add_subcommand("probs", "outcome probabilities of a PPOVM on a channel");
  probs->add_option("ppovm", ppovm_path, "PPOVM or couples JSON")->required();
  probs->add_option("channel", channel_path, "channel JSON")->required();

  TomoInputs tomo_in;
  auto* tomo = app.add_subcommand("tomo", "reconstruct a channel from PPOVM statistics");
  tomo->add_option("ppovm", tomo_in.ppovm_path, "PPOVM or couples JSON")->required();
  tomo->add_option("--channel", tomo_in.channel_path, "channel whose exact probabilities are inverted");
  tomo->add_flag("--exact", tomo_in.exact, "use exact probabilities of --channel");
  tomo->add_option("--counts", tomo_in.counts_path, "counts JSON from simulate");
  tomo->add_option("--truth", tomo_in.truth_path, "ground-truth channel for the HS error");
  tomo->add_option("--iters", tomo_in.iters, "PSD projection rounds")->check(CLI::PositiveNumber);

  std::string sim_channel, sim_ppovm;
  auto* simulate = app.add_subcommand("simulate", "sample outcome counts of a realized PPOVM");
  simulate->add_option("channel", sim_channel, "channel JSON")->required();
  simulate->add_option("ppovm", sim_ppovm, "PPOVM or couples JSON")->required();

  std::string u_path, v_path;
  std::optional<int> copies;
  auto* discriminate = app.add_subcommand("discriminate", "perfect discrimination of two unitaries");
  discriminate->add_option("U", u_path, "unitary (matrix or Kraus JSON)")->required();
  discriminate->add_option("V", v_path, "unitary (matrix or Kraus JSON)")->required();
  discriminate->add_option("--copies", copies, "search minimal parallel copies up to this n")
      ->check(CLI::PositiveNumber);

  GenOptions gen_opts;
  auto* gen = app.add_subcommand("gen", "write built-in schemes and channels");
  gen->add_option("what", gen_opts.what, kGenTargets)->required();
  gen->add_option("--d", gen_opts.d, "qudit dimension")->check(CLI::PositiveNumber);
  gen->add_option("--p", gen_opts.p, "depolarizing probability");
  gen->add_option("--gate", gen_opts.gate, "x|y|z|h|phase|clock|identity");
  gen->add_option("--angle", gen_opts.angle, "phase gate angle");
  gen->add_option("--target", gen_opts.target, "contraction target basis index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kIoFailure;
  }
  cfg.format = format;

  if (validate->parsed()) return cmd_validate(cfg, path, kind, std::cout, std::cerr);
  if (convert->parsed()) return cmd_convert(cfg, path, direction, std::cout, std::cerr);
  if (probs->parsed()) return cmd_probs(cfg, ppovm_path, channel_path, std::cout, std::cerr);
  if (tomo->parsed()) return cmd_tomo(cfg, tomo_in, std::cout, std::cerr);
  if (simulate->parsed()) return cmd_simulate(cfg, sim_channel, sim_ppovm, std::cout, std::cerr);
  if (discriminate->parsed()) return cmd_discriminate(cfg, u_path, v_path, copies, std::cout, std::cerr);
  if (gen->parsed()) return cmd_gen(cfg, gen_opts, std::cout, std::cerr);
  return kIoFailure;
}
