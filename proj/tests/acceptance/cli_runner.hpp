#ifndef DISTCOV_TESTS_CLI_RUNNER_HPP
#define DISTCOV_TESTS_CLI_RUNNER_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef DISTCOV_CLI_DEFAULT_PATH
#define DISTCOV_CLI_DEFAULT_PATH "distcov"
#endif

namespace cli_runner {

inline std::string cli_path() {
    if (const char* env = std::getenv("DISTCOV_CLI")) return env;
    return DISTCOV_CLI_DEFAULT_PATH;
}

inline std::filesystem::path scratch_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "distcov_acceptance";
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string write_fixture(const std::string& name, const std::string& contents) {
    const auto path = scratch_dir() / name;
    std::ofstream out(path, std::ios::binary);
    out << contents;
    return path.string();
}

struct CliResult {
    int exit_code{-1};
    std::string out;
    std::string err;
};

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const auto out_path = scratch_dir() / ("out" + std::to_string(counter) + ".txt");
    const auto err_path = scratch_dir() / ("err" + std::to_string(counter) + ".txt");
    ++counter;

    const std::string command =
        cli_path() + " " + args + " >" + out_path.string() + " 2>" + err_path.string();
    const int raw = std::system(command.c_str());

    CliResult result;
    result.exit_code = raw == -1 ? -1 : WEXITSTATUS(raw);
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    std::filesystem::remove(out_path);
    std::filesystem::remove(err_path);
    return result;
}

} // namespace cli_runner

#endif
