#include <exlab/errors.hpp>
#include <exlab/presets.hpp>

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <stdexcept>

#ifndef EXLAB_SOURCE_DIR
#define EXLAB_SOURCE_DIR "."
#endif

namespace exlab {

std::string presets_path()
{
    if (const char * env = std::getenv("EXLAB_PRESETS"); env && *env)
        return env;
    return std::string(EXLAB_SOURCE_DIR) + "/config/presets.json";
}

const nlohmann::json & presets()
{
    static nlohmann::json cache;
    static std::once_flag once;
    std::call_once(once, [] {
        auto path = presets_path();
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open preset file " + path);
        try {
            cache = nlohmann::json::parse(in);
        }
        catch (const nlohmann::json::parse_error & e) {
            throw ParseError(0, path + ": " + e.what());
        }
    });
    return cache;
}

const nlohmann::json & preset(const std::string & name)
{
    const auto & all = presets();
    if (name == "schema_version" || !all.contains(name))
        throw std::invalid_argument("unknown preset '" + name + "'");
    return all.at(name);
}

} // namespace exlab
