#include "evimap/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "evimap/error.hpp"
#include "evimap/io.hpp"
#include "evimap/mapping.hpp"

namespace evimap {

namespace {

constexpr int kExitInput = 1;
constexpr int kExitAllConflict = 2;

struct RunConfig {
  std::string obs_path;
  std::size_t width = 0;
  std::size_t height = 0;
  double lambda = 3.0;
  std::vector<std::string> lambda_values;
  double lambda_mu = 3.0;
  std::optional<std::string> mode;
  std::string discount = "interaction";
  double threshold = 0.1;
  std::size_t top = 5;
  std::size_t stride = 1;
  std::string out_path;
  std::string csv_path;
  std::string style = "belief";
};

double parse_lambda(const std::string& text) {
  if (text == "inf" || text == "+inf" || text == "infinity") return kInfinitePersistence;
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end || !(value >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("persistence '{}' is not a nonnegative number or 'inf'", text));
  }
  return value;
}

DecayModel build_decay(const RunConfig& cfg, const DomainPtr& domain) {
  if (!(cfg.lambda >= 0.0)) throw Error(ErrorCode::InvalidArgument, "--lambda must be nonnegative");
  std::vector<double> lambdas(domain->size(), cfg.lambda);
  for (const auto& entry : cfg.lambda_values) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("--lambda-value expects NAME=VALUE, got '{}'", entry));
    }
    const auto name = entry.substr(0, eq);
    const auto index = domain->index_of(name);
    if (!index) throw Error(ErrorCode::DomainError, fmt::format("unknown value '{}' in --lambda-value", name));
    lambdas[*index] = parse_lambda(entry.substr(eq + 1));
  }
  return DecayModel(domain, std::move(lambdas));
}

CombinationConfig build_combination(const RunConfig& cfg, CombinationMode default_mode) {
  CombinationConfig out;
  out.mode = default_mode;
  if (cfg.mode) out.mode = *cfg.mode == "normalized" ? CombinationMode::normalized : CombinationMode::unnormalized;
  out.discount = cfg.discount == "plain" ? Discount::plain : Discount::interaction;
  return out;
}

std::filesystem::path with_suffix(const std::filesystem::path& path, const std::string& suffix) {
  auto out = path;
  out.replace_filename(path.stem().string() + "_" + suffix + path.extension().string());
  return out;
}

void add_common_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--obs", cfg.obs_path, "Observation file")->required();
  sub->add_option("--width", cfg.width, "Grid width in cells")->required()->check(CLI::PositiveNumber);
  sub->add_option("--height", cfg.height, "Grid height in cells")->required()->check(CLI::PositiveNumber);
  sub->add_option("--lambda", cfg.lambda, "Persistence scale for every value");
  sub->add_option("--lambda-value", cfg.lambda_values, "Per-value persistence NAME=F (F may be inf or 0)");
  sub->add_option("--lambda-mu", cfg.lambda_mu, "Interaction scale between observations");
  sub->add_option("--mode", cfg.mode, "Combination mode")->check(CLI::IsMember({"normalized", "unnormalized"}));
  sub->add_option("--discount", cfg.discount, "Source dependence discount")
      ->check(CLI::IsMember({"plain", "interaction"}));
  sub->add_option("--out", cfg.out_path, "Raster output (PGM)");
  sub->add_option("--csv", cfg.csv_path, "CSV output");
}

class Runner {
 public:
  Runner(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out), grid_(Space::grid(cfg.width, cfg.height)) {}

  int run(const std::string& command) {
    observations_.emplace(parse_observations(read_file(cfg_.obs_path), grid_));
    decay_.emplace(build_decay(cfg_, observations_->domain()));
    interaction_.emplace(cfg_.lambda_mu);

    if (command == "suggest") return suggest();

    const bool wants_conflict = command == "conflict" || (command == "extrapolate" && cfg_.style == "conflict");
    const auto config =
        build_combination(cfg_, wants_conflict ? CombinationMode::unnormalized : CombinationMode::normalized);
    const auto field = extrapolate_field(grid_, *observations_, *decay_, *interaction_, config);
    if (config.mode == CombinationMode::normalized && field.conflicted_count() == field.size()) {
      throw AllConflicted{};
    }
    out_ << fmt::format("{}: {}x{} cells, {} observations, {} in total conflict\n", command, grid_.width(),
                        grid_.height(), observations_->size(), field.conflicted_count());

    if (command == "extrapolate") return extrapolate(field);
    if (command == "entropy") {
      auto h = entropy_map(field);
      write_csv(scalar_csv(h, "entropy"));
      const double scale = std::log(static_cast<double>(field.domain()->size()));
      for (auto& v : h.values) v /= scale;
      write_raster(render_scalar(h));
    } else if (command == "info") {
      write_csv(scalar_csv(information_map(field), "information"));
      write_raster(render_scalar(information_rendering_map(field)));
    } else if (command == "conflict") {
      const auto c = conflict_map(field);
      write_csv(scalar_csv(c, "conflict"));
      write_raster(render_scalar(c));
    } else if (command == "plausible") {
      const auto values = plausible_map(field, cfg_.threshold);
      write_csv(value_csv(values, *field.domain()));
      write_raster(render_values(values, field.domain()->size()));
    }
    return 0;
  }

  struct AllConflicted {};

 private:
  int extrapolate(const BeliefField& field) {
    write_csv(mass_csv(field));
    if (cfg_.out_path.empty()) return 0;
    if (cfg_.style == "belief") {
      if (field.domain()->size() == 2) {
        write_raster(render_belief(field));
      } else {
        const auto rasters = render_value_rasters(field);
        for (std::size_t v = 0; v < rasters.size(); ++v) {
          const auto path = with_suffix(cfg_.out_path, field.domain()->label(v));
          write_file_atomic(path, encode_pnm(rasters[v]));
          out_ << "wrote " << path.string() << '\n';
        }
      }
    } else if (cfg_.style == "rgb") {
      write_raster(render_belief_rgb(field));
    } else if (cfg_.style == "entropy") {
      auto h = entropy_map(field);
      const double scale = std::log(static_cast<double>(field.domain()->size()));
      for (auto& v : h.values) v /= scale;
      write_raster(render_scalar(h));
    } else if (cfg_.style == "info") {
      write_raster(render_scalar(information_rendering_map(field)));
    } else if (cfg_.style == "conflict") {
      write_raster(render_scalar(conflict_map(field)));
    }
    return 0;
  }

  int suggest() {
    const auto config = build_combination(cfg_, CombinationMode::normalized);
    SuggestOptions options;
    options.top = cfg_.top;
    options.stride = cfg_.stride;
    const auto ranked = suggest_next_measurement(grid_, *observations_, *decay_, *interaction_, config, options);
    const auto csv = suggestion_csv(ranked, grid_);
    write_csv(csv);
    if (cfg_.csv_path.empty()) out_ << csv;
    return 0;
  }

  void write_csv(const std::string& text) {
    if (cfg_.csv_path.empty()) return;
    write_file_atomic(cfg_.csv_path, text);
    out_ << "wrote " << cfg_.csv_path << '\n';
  }

  void write_raster(const Raster& raster) {
    if (cfg_.out_path.empty()) return;
    write_file_atomic(cfg_.out_path, encode_pnm(raster));
    out_ << "wrote " << cfg_.out_path << '\n';
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  Space grid_;
  std::optional<ObservationSet> observations_;
  std::optional<DecayModel> decay_;
  std::optional<InteractionModel> interaction_;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evidential extrapolation of pointwise spatial observations", "evimap"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  auto* extrapolate = app.add_subcommand("extrapolate", "Combined belief at every cell");
  add_common_options(extrapolate, cfg);
  extrapolate->add_option("--style", cfg.style, "Raster style")
      ->check(CLI::IsMember({"belief", "entropy", "info", "conflict", "rgb"}));

  for (const auto* name : {"entropy", "info", "conflict"}) {
    add_common_options(app.add_subcommand(name, fmt::format("{} map", name)), cfg);
  }
  auto* plausible = app.add_subcommand("plausible", "Most plausible value per cell");
  add_common_options(plausible, cfg);
  plausible->add_option("--threshold", cfg.threshold, "Minimum singleton belief before deciding a value")
      ->check(CLI::Range(0.0, 1.0));
  auto* suggest = app.add_subcommand("suggest", "Rank cells by expected entropy loss of one more measurement");
  add_common_options(suggest, cfg);
  suggest->add_option("--top", cfg.top, "Number of suggestions")->check(CLI::PositiveNumber);
  suggest->add_option("--stride", cfg.stride, "Candidate subsampling stride")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  const auto* chosen = app.get_subcommands().front();
  try {
    Runner runner(cfg, out);
    return runner.run(chosen->get_name());
  } catch (const Runner::AllConflicted&) {
    err << "error: every cell is in total conflict; rerun with --mode unnormalized to inspect it\n";
    return kExitAllConflict;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace evimap
