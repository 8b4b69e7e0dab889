#include "tactile/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "tactile/cli/config.hpp"
#include "tactile/cli/inspect.hpp"
#include "tactile/geometry/mesh.hpp"
#include "tactile/geometry/obj.hpp"
#include "tactile/geometry/scene.hpp"
#include "tactile/harness/replay.hpp"
#include "tactile/harness/trace.hpp"
#include "tactile/stimulus/calibration.hpp"

namespace tactile::cli {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::BadSync:
    case ErrorCode::BadCrc:
    case ErrorCode::BadLength:
      return kExitParse;
    case ErrorCode::ConfigError:
    case ErrorCode::IoError:
    case ErrorCode::BadSpec:
    case ErrorCode::BadRange:
    case ErrorCode::OutOfRange:
    case ErrorCode::RegionOutOfRange:
    case ErrorCode::StepNotMultipleOf10uA:
    case ErrorCode::DegenerateMesh:
    case ErrorCode::NonManifold:
    case ErrorCode::EmptyTrace:
    case ErrorCode::NonMonotoneTimestamps:
      return kExitUsage;
    default:
      return kExitRuntime;
  }
}

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& data, bool binary = false) {
  std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
  if (!f) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  f << data;
  if (!f) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create directory '" + dir.string() + "': " + ec.message());
}

struct CommonOptions {
  std::string config_file;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--config", common.config_file, "key=value config file");
  cmd->add_option("--set", common.overrides, "override a config key (key=value, unique suffix allowed)")
      ->take_all();
}

Config load_config(const CommonOptions& common, Config cfg) {
  Config base;
  if (!common.config_file.empty()) base = read_config(common.config_file);
  // Command-line paths win over the file, overrides win over both.
  if (cfg.scene.empty()) cfg.scene = base.scene;
  if (cfg.materials.empty()) cfg.materials = base.materials;
  if (cfg.trace.empty()) cfg.trace = base.trace;
  if (cfg.trace_spec.empty()) cfg.trace_spec = base.trace_spec;
  if (cfg.calibration.empty()) cfg.calibration = base.calibration;
  if (cfg.out_dir.empty()) cfg.out_dir = base.out_dir;
  if (!cfg.seed) cfg.seed = base.seed;
  cfg.params = base.params;
  cfg.context = base.context;
  cfg.thresholds = base.thresholds;
  if (cfg.scan == stimulus::ScanMode::Compact) cfg.scan = base.scan;
  for (const auto& o : common.overrides) apply_override(cfg, o);
  cfg.validate();
  return cfg;
}

stimulus::CalibrationProfile load_profile(const Config& cfg) {
  if (cfg.calibration.empty()) return stimulus::default_profile();
  return stimulus::run_calibration_session(
      stimulus::parse_calibration_script(geometry::read_text_file(cfg.calibration)));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finger-pad deformation rendering engine: replay, trace synthesis, visualization"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for every subcommand");

  // replay
  CommonOptions replay_common;
  Config replay_cfg;
  replay_cfg.out_dir.clear();
  bool fixed_slot = false;
  bool device_frames = false;
  auto* replay = app.add_subcommand("replay", "run the pipeline over a pose trace at 72 Hz");
  add_common(replay, replay_common);
  replay->add_option("--scene", replay_cfg.scene, "OBJ mesh");
  replay->add_option("--materials", replay_cfg.materials, "face texture level file");
  replay->add_option("--trace", replay_cfg.trace, "pose CSV");
  replay->add_option("--trace-spec", replay_cfg.trace_spec, "key=value trace generator spec");
  replay->add_option("--out", replay_cfg.out_dir, "output directory (default: out)");
  replay->add_option("--calibration", replay_cfg.calibration, "calibration script (default: 1000 uA everywhere)");
  replay->add_option("--seed", replay_cfg.seed, "seed for jittered trace specs");
  replay->add_flag("--fixed-slot", fixed_slot, "keep every electrode at its own 245 us slot");
  replay->add_flag("--device-frames", device_frames, "also write device.bin and device.hex");

  // synth-trace
  std::string spec_path, trace_out;
  std::optional<std::uint64_t> synth_seed;
  auto* synth = app.add_subcommand("synth-trace", "generate a pose CSV from a trace spec");
  synth->add_option("--spec", spec_path, "trace spec file")->required();
  synth->add_option("--out", trace_out, "output CSV (default: stdout)");
  synth->add_option("--seed", synth_seed, "noise seed, required when jitter_mm > 0");

  // viz
  std::string log_path, viz_out, svg_out;
  std::int64_t from = 0, to = std::numeric_limits<std::int64_t>::max();
  auto* viz = app.add_subcommand("viz", "render frame log ticks as 6x6 grids");
  viz->add_option("--log", log_path, "frame log")->required();
  viz->add_option("--from", from, "first tick (default: 0)");
  viz->add_option("--to", to, "last tick, inclusive (default: last)");
  viz->add_option("--out", viz_out, "text output (default: stdout)");
  viz->add_option("--svg", svg_out, "also write an SVG");

  // validate
  CommonOptions validate_common;
  Config validate_cfg;
  auto* validate = app.add_subcommand("validate", "check a scene mesh and its material file");
  add_common(validate, validate_common);
  validate->add_option("--scene", validate_cfg.scene, "OBJ mesh");
  validate->add_option("--materials", validate_cfg.materials, "face texture level file");

  // calibrate-replay
  std::string script_path, profile_out;
  auto* calibrate = app.add_subcommand("calibrate-replay", "replay a calibration script into a profile");
  calibrate->add_option("--script", script_path, "calibration script")->required();
  calibrate->add_option("--out", profile_out, "profile output (default: stdout)");

  // synth-scene
  std::string shape = "cube", scene_out, materials_out;
  double size = 200.0;
  int subdiv = 3;
  int level = 0;
  auto* scene_cmd = app.add_subcommand("synth-scene", "write a built-in test mesh as OBJ");
  scene_cmd->add_option("--shape", shape, "cube, sphere, blob or plane")
      ->check(CLI::IsMember({"cube", "sphere", "blob", "plane"}));
  scene_cmd->add_option("--size", size, "edge length or diameter in mm (default: 200)")->check(CLI::PositiveNumber);
  scene_cmd->add_option("--subdiv", subdiv, "sphere/blob subdivisions or plane divisions (default: 3)")
      ->check(CLI::Range(0, 7));
  scene_cmd->add_option("--level", level, "texture level written to --materials")->check(CLI::Range(0, 2));
  scene_cmd->add_option("--out", scene_out, "OBJ output")->required();
  scene_cmd->add_option("--materials", materials_out, "material file output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "E_USAGE: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (replay->parsed()) {
      Config cfg = load_config(replay_common, replay_cfg);
      if (fixed_slot) cfg.scan = stimulus::ScanMode::FixedSlot;
      if (cfg.scene.empty()) throw Error(ErrorCode::ConfigError, "no scene given (--scene or paths.scene)");
      if (cfg.trace.empty() == cfg.trace_spec.empty()) {
        throw Error(ErrorCode::ConfigError, "give exactly one of --trace and --trace-spec");
      }
      const auto scene = geometry::load_scene_files(cfg.scene, cfg.materials, cfg.thresholds);
      const auto trace = cfg.trace.empty() ? harness::synth_trace(harness::read_trace_spec(cfg.trace_spec, cfg.seed))
                                           : harness::read_pose_csv(cfg.trace);
      harness::ReplayConfig rc;
      rc.params = cfg.params;
      rc.context = cfg.context;
      rc.calibration = load_profile(cfg);
      rc.scan = cfg.scan;
      rc.keep_device_frames = device_frames;
      const auto result = harness::run_replay(scene, trace, rc);
      const auto metrics = harness::summarize(result.reports);

      const fs::path dir(cfg.out_dir);
      ensure_dir(dir);
      write_file(dir / "frames.log", result.frame_log);
      write_file(dir / "schedule.csv", result.schedule_csv);
      write_file(dir / "metrics.json", harness::metrics_json(metrics, result.cycles, result.dropped_frames));
      if (device_frames) {
        std::string bin, hex;
        for (const auto& f : result.device_frames) {
          bin.append(reinterpret_cast<const char*>(f.data()), f.size());
          hex += stimulus::to_hex(f) + '\n';
        }
        write_file(dir / "device.bin", bin, true);
        write_file(dir / "device.hex", hex);
      }
      out << "ticks " << metrics.ticks << " cycles " << result.cycles << " p50_us " << metrics.p50_us << " p95_us "
          << metrics.p95_us << " max_us " << metrics.max_us << " violations " << metrics.budget_violations << '\n';
      return kExitOk;
    }

    if (synth->parsed()) {
      const auto spec = harness::read_trace_spec(spec_path, synth_seed);
      if (spec.jitter_mm > 0.0 && !synth_seed) {
        throw Error(ErrorCode::BadSpec, "jittered trace needs --seed");
      }
      std::ostringstream csv;
      harness::write_pose_csv(csv, harness::synth_trace(spec));
      if (trace_out.empty()) out << csv.str();
      else write_file(trace_out, csv.str());
      return kExitOk;
    }

    if (viz->parsed()) {
      const auto records = select_ticks(parse_frame_log(geometry::read_text_file(log_path)), from, to);
      std::ostringstream text;
      for (const auto& r : records) {
        text << "tick " << r.tick << ' ' << r.mode << ' ' << r.feature << " n=" << r.n << " shift=" << r.shift
             << '\n'
             << render_text(r) << '\n';
      }
      if (viz_out.empty()) out << text.str();
      else write_file(viz_out, text.str());
      if (!svg_out.empty()) write_file(svg_out, render_svg(records));
      return kExitOk;
    }

    if (validate->parsed()) {
      const auto cfg = load_config(validate_common, validate_cfg);
      if (cfg.scene.empty()) throw Error(ErrorCode::ConfigError, "no scene given (--scene or paths.scene)");
      const auto report = validate_scene(cfg.scene, cfg.materials, cfg.thresholds);
      out << "scene: " << cfg.scene << '\n' << report.text();
      return report.overall() == Verdict::Fail ? kExitValidateFail : kExitOk;
    }

    if (calibrate->parsed()) {
      const auto profile =
          stimulus::run_calibration_session(stimulus::parse_calibration_script(geometry::read_text_file(script_path)));
      if (profile_out.empty()) out << stimulus::format_profile(profile);
      else write_file(profile_out, stimulus::format_profile(profile));
      return kExitOk;
    }

    if (scene_cmd->parsed()) {
      geometry::TriangleMesh mesh;
      if (shape == "cube") mesh = geometry::make_box({0, 0, 0}, {size, size, size});
      else if (shape == "sphere") mesh = geometry::make_icosphere({0, 0, 0}, size / 2, subdiv);
      else if (shape == "blob") mesh = geometry::make_blob({0, 0, 0}, size / 2, subdiv);
      else mesh = geometry::make_plane(size, std::max(1, subdiv), 0.0);
      write_file(scene_out, geometry::write_obj(mesh));
      if (!materials_out.empty()) write_file(materials_out, "* " + std::to_string(level) + "\n");
      out << "triangles " << mesh.triangles.size() << '\n';
      return kExitOk;
    }
  } catch (const Error& e) {
    err << error_code_name(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "E_RUNTIME: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace tactile::cli
