#include <doctest.h>

#include "test_util.hpp"

using qcgeom::testutil::CliResult;
using qcgeom::testutil::run_cli;
using qcgeom::testutil::surface_path;

TEST_CASE("classify exit codes and labels") {
    const CliResult ok = run_cli("classify -s " + surface_path("sphere_n1.qcs"));
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("Sphere") != std::string::npos);
    CHECK(ok.output.find("(2, 0, 0)") != std::string::npos);

    const CliResult rej = run_cli("classify -s " + surface_path("skewed_ellipsoid_n1.qcs"));
    CHECK(rej.exit_code == 2);
    CHECK(rej.output.find("Rejected") != std::string::npos);
    CHECK(rej.output.find("sp1_residual") != std::string::npos);

    const CliResult err = run_cli("classify -s /no/such/file.qcs");
    CHECK(err.exit_code == 1);

    const CliResult usage = run_cli("classify");
    CHECK(usage.exit_code == 1);
}

TEST_CASE("verify battery selection") {
    const CliResult all = run_cli("verify -s " + surface_path("sphere_n1.qcs") +
                                  " --samples 12 --battery all");
    CHECK(all.exit_code == 0);

    const CliResult pot = run_cli("verify -s " + surface_path("heisenberg_n1.qcs") +
                                  " --samples 12 --battery potentials");
    CHECK(pot.exit_code == 0);
    CHECK(pot.output.find("fl0_dev") != std::string::npos);

    const CliResult unknown =
        run_cli("verify -s " + surface_path("sphere_n1.qcs") + " --battery bogus");
    CHECK(unknown.exit_code == 1);
}

TEST_CASE("frame dump and projection failure") {
    const CliResult fr = run_cli("frame -s " + surface_path("heisenberg_n1.qcs") +
                                 " --point \"0,0,0,0,0,0,0,0\"");
    CHECK(fr.exit_code == 0);
    CHECK(fr.output.find("0.79370052598409") != std::string::npos);

    const CliResult fs = run_cli("frame -s " + surface_path("sphere_n1.qcs") +
                                 " --point \"0,0,0,0,1,0,0,0\"");
    CHECK(fs.exit_code == 0);
    CHECK(fs.output.find("f = 1\n") != std::string::npos);
    CHECK(fs.output.find("S = 2") != std::string::npos);

    // the gradient of the sphere function vanishes at the origin seed
    const CliResult bad = run_cli("frame -s " + surface_path("sphere_n1.qcs") +
                                  " --point \"0,0,0,0,0,0,0,0\"");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("json reports are byte-identical across runs") {
    const std::string cmd =
        "classify -s " + surface_path("hyperboloid_n1.qcs") + " --seed 7 --json";
    const CliResult a = run_cli(cmd);
    const CliResult b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("\"schema_version\":\"1\"") != std::string::npos);
    CHECK(a.output.find("\"label\":\"Hyperboloid\"") != std::string::npos);

    // different seed gives a structurally equal but numerically distinct report
    const CliResult c = run_cli("classify -s " + surface_path("hyperboloid_n1.qcs") +
                                " --seed 8 --json");
    CHECK(c.exit_code == 0);
    CHECK(c.output != a.output);
}

TEST_CASE("normalize emits a surface file that classifies to the same label") {
    const CliResult nr = run_cli("normalize -s " + surface_path("heisenberg_n1.qcs"));
    CHECK(nr.exit_code == 0);
    CHECK(nr.output.find("normalized surface") != std::string::npos);
    CHECK(nr.output.find("Parabolic") != std::string::npos);
}
