#pragma once

#include "builtin.hpp"
#include "robinson.hpp"

#include <fstream>

namespace sftkit {

inline std::vector<std::string> builtin_names() {
    return {"trivial", "full", "even", "chess", "linear", "log_first_layer", "delta", "robinson_adr"};
}

inline SftDefinition builtin_sft(const std::string& name) {
    if (name == "trivial") return builtin::trivial();
    if (name == "full") return builtin::full_shift(2);
    if (name == "even") return builtin::even();
    if (name == "chess") return builtin::chess();
    if (name == "linear") return builtin::linear();
    if (name == "log_first_layer") return builtin::log_first_layer();
    if (name == "delta") return builtin::delta();
    if (name == "robinson_adr") {
        SftDefinition s = robinson::sft();
        s.name = "robinson_adr";
        return s;
    }
    throw Error("UnknownSft", "unknown built-in SFT '" + name + "'");
}

inline json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("IoError", "cannot open '" + path + "'");
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw Error("InvalidJson", path + ": " + e.what());
    }
}

// A built-in name, or a path to an SFT definition file.
inline SftDefinition load_sft(const std::string& spec) {
    auto names = builtin_names();
    if (std::find(names.begin(), names.end(), spec) != names.end()) return builtin_sft(spec);
    if (!std::ifstream(spec)) throw Error("UnknownSft", "'" + spec + "' is neither a built-in SFT nor a readable file");
    try {
        return sft_from_json(read_json_file(spec));
    } catch (const json::exception& e) {
        throw Error("InvalidJson", spec + ": " + e.what());
    }
}

}  // namespace sftkit
