// Exercises the installed command-line contract: exit codes (0 success,
// 1 input error, 2 non-convergence), file outputs, and plain-text output
// when not attached to a terminal.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const std::string cli = EM_CLI_PATH;

struct Run {
    int exit_code;
    std::string output;  // stdout + stderr
};

Run run_cli(const std::string& args) {
    const fs::path capture = fs::temp_directory_path() / "em_cli_capture.txt";
    const std::string command = cli + " " + args + " > " + capture.string() + " 2>&1";
    const int status = std::system(command.c_str());
    Run result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(capture);
    std::ostringstream text;
    text << in.rdbuf();
    result.output = text.str();
    fs::remove(capture);
    return result;
}

fs::path write_temp(const std::string& name, const std::string& content) {
    const fs::path path = fs::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

int count_lines(const fs::path& path) {
    std::ifstream in(path);
    int lines = 0;
    std::string line;
    while (std::getline(in, line)) ++lines;
    return lines;
}

}  // namespace

TEST_CASE("run on the bundled tables succeeds") {
    const fs::path csv = fs::temp_directory_path() / "em_run.csv";
    Run r = run_cli("run --bundled --csv " + csv.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("townsend_2000") != std::string::npos);
    CHECK(r.output.find("average") != std::string::npos);
    CHECK(r.output.find('\033') == std::string::npos);  // piped output is unstyled
    CHECK(count_lines(csv) == 7);                       // header + six rows
    fs::remove(csv);
}

TEST_CASE("the classical baseline zeroes the predicted effect") {
    const fs::path csv = fs::temp_directory_path() / "em_zero.csv";
    Run r = run_cli("run --bundled --gamma-zero --csv " + csv.string());
    CHECK(r.exit_code == 0);

    std::ifstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    int dis_col = -1, col = 0;
    std::istringstream header(line);
    std::string field;
    while (std::getline(header, field, ',')) {
        if (field == "dis") dis_col = col;
        ++col;
    }
    REQUIRE(dis_col >= 0);
    while (std::getline(in, line)) {
        std::istringstream row(line);
        for (int c = 0; std::getline(row, field, ','); ++c) {
            if (c == dis_col) CHECK(std::abs(std::stod(field)) <= 1e-12);
        }
    }
    fs::remove(csv);
}

TEST_CASE("input errors exit with 1") {
    const fs::path bad = write_temp("em_bad.csv",
                                    "name,face,p_g,p_a_given_g,p_b,p_a_given_b,p_t,p_a\n");
    Run r = run_cli("run --experiments " + bad.string());
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("face_type") != std::string::npos);
    fs::remove(bad);

    CHECK(run_cli("run").exit_code == 1);              // no data source
    CHECK(run_cli("definitely-not-a-command").exit_code == 1);
    CHECK(run_cli("run --bundled --entropy nonsense").exit_code == 1);
    CHECK(run_cli("fit --bundled").exit_code == 1);    // --target is required
}

TEST_CASE("unreachable observed targets exit with 2") {
    Run r = run_cli("run --bundled --face wide --target observed");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("did not converge") != std::string::npos);
}

TEST_CASE("fit writes a config that run reuses") {
    const fs::path rates = fs::temp_directory_path() / "em_rates.toml";
    Run fit = run_cli("fit --bundled --target em-published --out " + rates.string());
    CHECK(fit.exit_code == 0);
    CHECK(fit.output.find("townsend_2000.narrow") != std::string::npos);

    std::ifstream in(rates);
    std::ostringstream text;
    text << in.rdbuf();
    CHECK(text.str().find("[rates.townsend_2000.narrow]") != std::string::npos);
    CHECK(text.str().find("k_r = ") != std::string::npos);

    Run reuse = run_cli("run --bundled --config " + rates.string());
    CHECK(reuse.exit_code == 0);
    fs::remove(rates);
}

TEST_CASE("entropy bake-off emits the full grid") {
    const fs::path csv = fs::temp_directory_path() / "em_bake.csv";
    const fs::path plot = fs::temp_directory_path() / "em_plot.csv";
    Run r = run_cli("entropy --bundled --csv " + csv.string() + " --plot-data " + plot.string());
    CHECK(r.exit_code == 0);
    CHECK(count_lines(csv) == 36);   // header + 5 experiments x 7 methods
    CHECK(count_lines(plot) == 36);
    fs::remove(csv);
    fs::remove(plot);

    const fs::path five = fs::temp_directory_path() / "em_bake5.csv";
    // the bundled tables are the default data source here
    Run deng_only = run_cli("entropy --methods deng --csv " + five.string());
    CHECK(deng_only.exit_code == 0);
    CHECK(count_lines(five) == 6);
    fs::remove(five);
}

TEST_CASE("flags override the config file only when passed") {
    const fs::path conf = write_temp("em_t0.toml", "[run]\nt = 0.0\n");
    // with no deliberation time every conditional attack share is one half
    Run frozen = run_cli("run --bundled --rates 1 0.2 --config " + conf.string());
    CHECK(frozen.exit_code == 0);
    CHECK(frozen.output.find("0.5000") != std::string::npos);

    Run flagged = run_cli("run --bundled --rates 1 0.2 --t 2 --config " + conf.string());
    CHECK(flagged.exit_code == 0);
    CHECK(flagged.output.find("0.5000") == std::string::npos);
    fs::remove(conf);
}

TEST_CASE("entropy scores a user-supplied body of evidence") {
    const fs::path boe = write_temp("em_ball.boe", "frame: R,B\nR : 0.4\nR|B : 0.6\n");
    Run r = run_cli("entropy --boe " + boe.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("deng") != std::string::npos);
    CHECK(r.output.find("george-pal-conflict") != std::string::npos);
    fs::remove(boe);
}

TEST_CASE("validate accepts good evidence and rejects bad") {
    const fs::path good = write_temp("em_good.boe", "frame: R,B\nR : 0.4\nR|B : 0.6\n");
    Run ok = run_cli("validate " + good.string());
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("valid body of evidence") != std::string::npos);
    fs::remove(good);

    const fs::path bad = write_temp("em_badsum.boe", "frame: R,B\nR : 0.4\nB : 0.4\n");
    Run fail = run_cli("validate " + bad.string());
    CHECK(fail.exit_code == 1);
    fs::remove(bad);

    CHECK(run_cli("validate /no/such/file.boe").exit_code == 1);
}

TEST_CASE("markov-demo tabulates the residual") {
    Run r = run_cli("markov-demo");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("residual") != std::string::npos);

    Run frozen = run_cli("markov-demo --t 0 --mix 0.3 0.7");
    CHECK(frozen.exit_code == 0);
    CHECK(frozen.output.find("0.3000") != std::string::npos);

    Run certain = run_cli("markov-demo --t 1.5 --mix 1 0");
    CHECK(certain.exit_code == 0);

    CHECK(run_cli("markov-demo --mix 0.4 0.4").exit_code == 1);
}
