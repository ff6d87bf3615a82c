#include <catch2/catch.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "spinrod/config.hpp"
#include "spinrod/runner.hpp"

using namespace spinrod;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
    namespace fs = std::filesystem;
    const auto path = fs::temp_directory_path() / name;
    std::ofstream os(path);
    os << body;
    return path.string();
}

}  // namespace

TEST_CASE("config parsing") {
    const auto path = write_temp("spinrod_test_cfg.cfg",
                                 "# benchmark scenario\n"
                                 "setup = b\n"
                                 "dim = 2\n"
                                 "Re = 1\n"
                                 "Rb = 0.5  # fast rotation\n"
                                 "Fr = inf\n"
                                 "eps = 0.1\n"
                                 "ell = 1\n"
                                 "ds = 0.05\n"
                                 "t_end = 0.2\n");
    const auto cfg = parse_config_file(path);
    CHECK(cfg.setup == "b");
    CHECK(cfg.Rb == Approx(0.5));
    CHECK(std::isinf(cfg.Fr));
    CHECK(cfg.ds == Approx(0.05));
    const auto p = cfg.to_params();
    CHECK(p.Rb_inv == Approx(2.0));
    CHECK(p.Fr_inv == 0.0);
    validate_config(cfg);
    std::remove(path.c_str());

    SECTION("unknown key") {
        const auto bad = write_temp("spinrod_bad.cfg", "setup = b\nbogus = 1\n");
        CHECK_THROWS_AS(parse_config_file(bad), ConfigError);
        std::remove(bad.c_str());
    }
    SECTION("non-integer cell count") {
        RunConfig c = cfg;
        c.ds = 0.3;
        CHECK_THROWS_AS(validate_config(c), ConfigError);
    }
    SECTION("default time steps") {
        RunConfig c = cfg;
        CHECK(c.default_dt() == Approx(0.9 * 0.05));
        c.setup = "a";
        c.dsigma = 0.1;
        CHECK(c.default_dt() == Approx(0.1));
        c.dt = 0.02;
        CHECK(c.default_dt() == Approx(0.02));
    }
}

TEST_CASE("short spatial run produces a consistent record") {
    RunConfig cfg;
    cfg.setup = "b";
    cfg.dim = 2;
    cfg.Re = 1;
    cfg.Rb = 1;
    cfg.eps = 0.1;
    cfg.ell = 1;
    cfg.ds = 0.1;
    cfg.dt = 0.05;
    cfg.t_end = 0.2;
    cfg.snapshot_every = 2;
    const auto rec = run_simulate(cfg);
    CHECK(rec.ncomp == 10);
    REQUIRE(rec.snapshots.size() >= 2);
    CHECK(rec.snapshots.front().t == 0.0);
    CHECK(rec.snapshots.back().t == Approx(0.2).margin(1e-12));
    CHECK(rec.stats.steps == 4);
    for (std::size_t k = 1; k < rec.snapshots.size(); ++k)
        CHECK(rec.snapshots[k].t > rec.snapshots[k - 1].t);
    // straight jet with rotation starts bending: n1 becomes nonzero somewhere
    double max_n1 = 0;
    const auto& last = rec.snapshots.back();
    for (int i = 0; i < last.n_cells(10); ++i)
        max_n1 = std::max(max_n1, std::abs(last.data[i * 10 + 0]));
    CHECK(max_n1 > 1e-6);
}

TEST_CASE("growing run activates cells as the domain extends") {
    RunConfig cfg;
    cfg.setup = "a";
    cfg.dim = 2;
    cfg.Re = 1;
    cfg.Rb = 1;
    cfg.eps = 0.1;
    cfg.dsigma = 0.05;
    cfg.t_end = 0.3;
    const auto rec = run_simulate(cfg);
    CHECK(rec.snapshots.back().n_cells(9) == 6);
}

TEST_CASE("sweep runs every member on the worker pool") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "spinrod_sweep_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string body =
        "setup = b\ndim = 2\nRe = 1\nRb = 2\neps = 0.1\nell = 1\nds = 0.25\n"
        "dt = 0.1\nt_end = 0.2\n";
    std::ofstream((dir / "a.cfg")) << body;
    std::ofstream((dir / "b.cfg")) << body << "Rb = 0.5\n";
    std::ofstream((dir / "sweep.cfg")) << "run = " << (dir / "a.cfg").string() << "\n"
                                       << "run = " << (dir / "b.cfg").string() << "\n"
                                       << "jobs = 2\n";
    const auto recs = run_sweep(parse_sweep_file((dir / "sweep.cfg").string()));
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].stats.steps == 2);
    CHECK(recs[1].stats.steps == 2);
    CHECK(recs[1].config.Rb == Approx(0.5));
    fs::remove_all(dir);
}

TEST_CASE("identical configs produce bit-identical csv output") {
    namespace fs = std::filesystem;
    const auto d1 = fs::temp_directory_path() / "spinrod_det_1";
    const auto d2 = fs::temp_directory_path() / "spinrod_det_2";
    fs::remove_all(d1);
    fs::remove_all(d2);
    RunConfig cfg;
    cfg.setup = "b";
    cfg.dim = 2;
    cfg.Re = 1;
    cfg.Rb = 0.8;
    cfg.eps = 0.1;
    cfg.ell = 1;
    cfg.ds = 0.125;
    cfg.dt = 0.05;
    cfg.t_end = 0.3;
    cfg.output = d1.string();
    run_simulate(cfg);
    cfg.output = d2.string();
    run_simulate(cfg);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    // the config echo omits the output path, so whole files must match
    const auto a = slurp(d1 / "snap_000001.csv");
    const auto b = slurp(d2 / "snap_000001.csv");
    REQUIRE(!a.empty());
    CHECK(a == b);
    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST_CASE("csv output is written and self-describing") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "spinrod_out_test";
    fs::remove_all(dir);
    RunConfig cfg;
    cfg.setup = "b";
    cfg.dim = 2;
    cfg.Re = 1;
    cfg.Rb = 2;
    cfg.eps = 0.1;
    cfg.ell = 1;
    cfg.ds = 0.25;
    cfg.dt = 0.1;
    cfg.t_end = 0.1;
    cfg.output = dir.string();
    run_simulate(cfg);
    REQUIRE(fs::exists(dir / "snap_000000.csv"));
    REQUIRE(fs::exists(dir / "summary.csv"));
    std::ifstream in(dir / "snap_000001.csv");
    std::string line, all;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.rfind("cell_index,s_center,n1,u,r1,r2,alpha,kappa,A,v1,v2,omega", 0) == 0)
            saw_header = true;
        all += line + "\n";
    }
    CHECK(saw_header);
    CHECK(all.find("# Rb = 2") != std::string::npos);
    fs::remove_all(dir);
}
