#pragma once

// Minimal check-and-count harness shared by the test executables.  Each
// test file is a standalone main() that runs sections, prints every failing
// check with its location, and exits nonzero if anything failed.

#include <cstdio>
#include <sstream>
#include <string>

#include "stillman/arrow.hpp"
#include "stillman/bignat.hpp"

namespace testsupport {

inline int failures = 0;
inline int checks = 0;
inline const char* current_section = "";

inline void section(const char* name) {
    current_section = name;
    std::printf("-- %s\n", name);
}

inline std::string repr(const stillman::BigNat& v) { return v.to_string(); }
inline std::string repr(stillman::Ordering o) { return stillman::to_string(o); }
inline std::string repr(const std::string& s) { return s; }
inline std::string repr(const char* s) { return s; }
inline std::string repr(bool b) { return b ? "true" : "false"; }

template <class T>
std::string repr(const T& v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

inline int summary(const char* binary) {
    if (failures == 0) {
        std::printf("%s: all %d checks passed\n", binary, checks);
        return 0;
    }
    std::printf("%s: %d of %d checks FAILED\n", binary, failures, checks);
    return 1;
}

}  // namespace testsupport

#define CHECK(cond)                                                          \
    do {                                                                     \
        ++testsupport::checks;                                               \
        if (!(cond)) {                                                       \
            ++testsupport::failures;                                         \
            std::printf("FAIL %s:%d [%s] %s\n", __FILE__, __LINE__,          \
                        testsupport::current_section, #cond);                \
        }                                                                    \
    } while (0)

#define CHECK_EQ(lhs, rhs)                                                   \
    do {                                                                     \
        ++testsupport::checks;                                               \
        const auto& ts_l = (lhs);                                            \
        const auto& ts_r = (rhs);                                            \
        if (!(ts_l == ts_r)) {                                               \
            ++testsupport::failures;                                         \
            std::printf("FAIL %s:%d [%s] %s == %s\n  left:  %s\n  right: %s\n", \
                        __FILE__, __LINE__, testsupport::current_section,    \
                        #lhs, #rhs, testsupport::repr(ts_l).c_str(),         \
                        testsupport::repr(ts_r).c_str());                    \
        }                                                                    \
    } while (0)

#define CHECK_THROWS(expr, exception_type)                                   \
    do {                                                                     \
        ++testsupport::checks;                                               \
        bool ts_caught = false;                                              \
        try {                                                                \
            (void)(expr);                                                    \
        } catch (const exception_type&) {                                    \
            ts_caught = true;                                                \
        } catch (const std::exception& e) {                                  \
            std::printf("FAIL %s:%d [%s] %s threw the wrong type: %s\n",     \
                        __FILE__, __LINE__, testsupport::current_section,    \
                        #expr, e.what());                                    \
            ++testsupport::failures;                                         \
            break;                                                           \
        }                                                                    \
        if (!ts_caught) {                                                    \
            ++testsupport::failures;                                         \
            std::printf("FAIL %s:%d [%s] %s did not throw %s\n", __FILE__,   \
                        __LINE__, testsupport::current_section, #expr,       \
                        #exception_type);                                    \
        }                                                                    \
    } while (0)
