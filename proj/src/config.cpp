#include "odolab/config.hpp"

#include "odolab/errors.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace odolab {

json load_config(const std::string& arg) {
    std::size_t p = arg.find_first_not_of(" \t\r\n");
    std::string text;
    if (p != std::string::npos && arg[p] == '{') {
        text = arg;
    } else {
        std::ifstream in(arg);
        if (!in) throw SpecError("cannot open config '" + arg + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("config is not valid JSON: ") + e.what());
    }
}

std::string write_report(const std::string& dir, const std::string& name, const std::string& text) {
    std::filesystem::path d(dir);
    std::error_code ec;
    std::filesystem::create_directories(d, ec);
    if (ec) throw SpecError("cannot create output directory '" + dir + "': " + ec.message());
    auto path = d / name;
    std::ofstream out(path);
    if (!out) throw SpecError("cannot write '" + path.string() + "'");
    out << text;
    return path.string();
}

}  // namespace odolab
