#pragma once

#include <gtest/gtest.h>

#include "aclab/aclab.hpp"

// Runs the statement and asserts that it throws a LabError with the given code.
#define EXPECT_LAB_ERROR(stmt, ecode)                                             \
    do {                                                                          \
        bool thrown_ = false;                                                     \
        try {                                                                     \
            stmt;                                                                 \
        } catch (const aclab::LabError& e_) {                                     \
            thrown_ = true;                                                       \
            EXPECT_EQ(e_.code(), aclab::ErrorCode::ecode) << e_.what();           \
        }                                                                         \
        EXPECT_TRUE(thrown_) << "expected LabError " #ecode;                      \
    } while (0)

namespace aclab::test {

inline CVec c2(cplx a, cplx b) {
    CVec z(2);
    z << a, b;
    return z;
}

}  // namespace aclab::test
