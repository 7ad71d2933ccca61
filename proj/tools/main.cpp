#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace cli = paloma::cli;

int main(int argc, char **argv)
{
	CLI::App app{"Analysis of located Markovian agent models"};
	app.require_subcommand(1);

	std::string out_path;
	app.add_option("--out", out_path, "Write results to this file instead of stdout");

	cli::CheckArgs check;
	auto *check_cmd = app.add_subcommand("check", "Parse and validate a model");
	check_cmd->add_option("model", check.model, "Model file")->required();

	cli::CtmcArgs ctmc;
	ctmc.bound = cli::default_bound();
	auto *ctmc_cmd = app.add_subcommand("ctmc", "Generate the CTMC of a system");
	ctmc_cmd->add_option("model", ctmc.model, "Model file")->required();
	ctmc_cmd->add_option("--system", ctmc.system, "System to explore")->required();
	ctmc_cmd->add_option("--bound", ctmc.bound, "Maximum number of states")->check(CLI::PositiveNumber);
	ctmc_cmd->add_option("--format", ctmc.format, "tsv or dot")->check(CLI::IsMember({"tsv", "dot"}));

	cli::RateArgs rate;
	auto *rate_cmd = app.add_subcommand("rate", "Context-aware exit rate of an action");
	rate_cmd->add_option("model", rate.model, "Model file")->required();
	rate_cmd->add_option("--system", rate.system, "Subject system")->required();
	rate_cmd->add_option("--action", rate.action, "Action, e.g. '!!m', '??m', '!m', '?m' or 'm'")->required();
	rate_cmd->add_option("--loc", rate.locations, "Restrict to these locations");
	rate_cmd->add_option("--context", rate.context, "'empty' or a system name");

	cli::BisimArgs bisim;
	bisim.bound = cli::default_bound();
	auto *bisim_cmd = app.add_subcommand("bisim", "Decide bisimilarity of two systems");
	bisim_cmd->add_option("model", bisim.model, "Model file")->required();
	bisim_cmd->add_option("--left", bisim.left, "Left system")->required();
	bisim_cmd->add_option("--right", bisim.right, "Right system")->required();
	bisim_cmd->add_option("--context", bisim.context, "'empty' or a system name");
	bisim_cmd->add_option("--mode", bisim.mode, "isometry, naive or fixed")
		->check(CLI::IsMember({"isometry", "naive", "fixed"}));
	bisim_cmd->add_option("--matrix", bisim.matrix, "Linear part a,b,c,d (fixed mode)")->delimiter(',');
	bisim_cmd->add_option("--offset", bisim.offset, "Translation x,y (fixed mode)")->delimiter(',');
	bisim_cmd->add_option("--bound", bisim.bound, "Maximum states per side")->check(CLI::PositiveNumber);
	bisim_cmd->add_option("--subsets", bisim.subset_size, "Largest location subset in the rate check")
		->check(CLI::PositiveNumber);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError &e) {
		int code = app.exit(e);
		return code == 0 ? 0 : cli::kInputError;
	}

	std::ofstream file;
	if (!out_path.empty()) {
		file.open(out_path, std::ios::binary);
		if (!file) {
			std::cerr << out_path << ": cannot open for writing\n";
			return cli::kInputError;
		}
	}
	std::ostream &out = out_path.empty() ? std::cout : file;

	if (*check_cmd)
		return cli::cmd_check(check, out, std::cerr);
	if (*ctmc_cmd)
		return cli::cmd_ctmc(ctmc, out, std::cerr);
	if (*rate_cmd)
		return cli::cmd_rate(rate, out, std::cerr);
	return cli::cmd_bisim(bisim, out, std::cerr);
}
