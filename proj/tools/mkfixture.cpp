#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "dualfit/fixtures.hpp"
#include "dualfit/flow.hpp"
#include "dualfit/pipeline.hpp"

// Generates a self-contained synthetic scene plus identity part flows and
// a ready-to-run config, so the pipeline can be exercised without any
// dataset.
int main(int argc, char** argv) {
  CLI::App app{"Synthetic try-on fixture generator"};

  std::string out_dir = "fixture";
  int width = 192;
  int height = 256;
  std::string flow_res;
  std::string flow_spec = "identity";
  app.add_option("--out", out_dir, "fixture directory");
  app.add_option("--width", width, "scene width in pixels");
  app.add_option("--height", height, "scene height in pixels");
  app.add_option("--flow-res", flow_res, "flow resolution WxH (default: half scene)");
  app.add_option("--flow", flow_spec, "synthetic flow spec for the .flo files");

  CLI11_PARSE(app, argc, argv);

  try {
    int flow_w = width / 2;
    int flow_h = height / 2;
    if (!flow_res.empty()) {
      const auto [w, h] = dualfit::parse_resolution(flow_res);
      flow_w = w;
      flow_h = h;
    }

    const std::filesystem::path dir(out_dir);
    dualfit::write_scene(dualfit::make_scene(width, height), dir);

    const dualfit::SynthFlowSpec spec =
        dualfit::parse_synth_flow_spec(flow_spec);
    const dualfit::FlowField flow = dualfit::synth_flow(spec, flow_w, flow_h);
    const std::array<const char*, 3> names{"flow_left.flo", "flow_right.flo",
                                           "flow_torso.flo"};
    for (const char* name : names) dualfit::write_flow(flow, dir / name);

    nlohmann::json config = {
        {"flow_resolution", {flow_w, flow_h}},
        {"output_resolution", {width, height}},
        {"band", {{"kernel", 3}, {"iterations", 5}}},
        {"solver", {{"tolerance", 1e-5}, {"max_iterations", 10000}}},
        {"dgt_threshold", 0.1},
        {"paths",
         {{"person", (dir / "person.png").string()},
          {"parsing", (dir / "parsing.png").string()},
          {"garment", (dir / "garment.png").string()},
          {"garment_parsing", (dir / "garment_parsing.png").string()},
          {"flows",
           {(dir / names[0]).string(), (dir / names[1]).string(),
            (dir / names[2]).string()}},
          {"densepose", (dir / "densepose.png").string()},
          {"pose", (dir / "pose.png").string()},
          {"output_dir", (dir / "out").string()}}},
        {"ablate", {{"n_values", {2, 5, 10}}}},
    };
    std::ofstream out(dir / "config.json");
    out << config.dump(2) << "\n";
    std::cout << "fixture written to " << dir.string() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
