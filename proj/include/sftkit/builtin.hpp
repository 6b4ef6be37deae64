#pragma once

#include "sft.hpp"

namespace sftkit {

inline const std::string kWhite = "□";
inline const std::string kBlack = "■";
inline const std::string kRight = "→";
inline const std::string kDown = "↓";

namespace builtin {

inline SftDefinition full_shift(int k = 2) {
    std::vector<std::string> a;
    if (k == 2) {
        a = {kWhite, kBlack};
    } else {
        for (int i = 0; i < k; ++i) a.push_back(std::to_string(i));
    }
    return SftDefinition(a, {}, 1, "full" + std::to_string(k));
}

inline SftDefinition trivial() { return SftDefinition({"0"}, {}, 1, "trivial"); }

inline SftDefinition even() {
    SftDefinition s({kWhite, kBlack}, {}, 0, "even");
    s.forbid_symbols({{0, 0, 1}, {1, 0, 1}});
    s.forbid_symbols({{0, 0, 1}, {0, 1, 1}});
    s.finalize();
    return s;
}

inline SftDefinition chess() {
    SftDefinition s({kWhite, kBlack}, {}, 0, "chess");
    for (int c : {0, 1}) {
        s.forbid_symbols({{0, 0, c}, {1, 0, c}});
        s.forbid_symbols({{0, 0, c}, {0, 1, c}});
    }
    s.finalize();
    return s;
}

// Black cells form right triangles growing upwards-left; gluing gap is linear.
inline SftDefinition linear() {
    SftDefinition s({kWhite, kBlack}, {}, 0, "linear");
    s.forbid_symbols({{0, 0, 0}, {1, 0, 1}, {1, 1, 1}});
    s.forbid_symbols({{0, 0, 1}, {0, 1, 1}, {1, 0, 0}});
    s.forbid_symbols({{0, 0, 1}, {1, 0, 1}, {2, 0, 1}, {1, 1, 0}});
    s.finalize();
    return s;
}

inline SftDefinition log_first_layer() {
    SftDefinition s({kWhite, kBlack}, {}, 3, "log_first_layer");
    s.forbid_symbols({{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}});
    s.forbid_symbols({{0, 0, 1}, {0, 1, 0}, {1, 0, 1}, {1, 1, 1}});
    s.forbid_symbols({{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    s.forbid_symbols({{0, 0, 1}, {0, 1, 1}, {1, 0, 0}, {1, 1, 1}, {2, 0, 0}, {2, 1, 1}});
    s.finalize();
    return s;
}

inline SftDefinition delta() {
    SftDefinition s({kRight, kDown}, {}, 0, "delta");
    s.forbid_symbols({{0, 0, 1}, {0, 1, 1}}, "down-over-down");
    s.forbid_symbols({{0, 1, 0}, {1, 1, 1}, {0, 0, 0}, {1, 0, 0}}, "unsupported-shift");
    s.finalize();
    return s;
}

}  // namespace builtin
}  // namespace sftkit
