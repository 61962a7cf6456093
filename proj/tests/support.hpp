#ifndef LAGTOP_TESTS_SUPPORT_HPP
#define LAGTOP_TESTS_SUPPORT_HPP

#include "lagtop/homology.hpp"
#include "lagtop/topsys.hpp"

#include <random>
#include <vector>

namespace lagtop::testing {

inline std::mt19937_64& rng()
{
    static std::mt19937_64 r(20240611);
    return r;
}

inline double uniform(double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline TopState random_state(int g, double scale = 1.0)
{
    double m = uniform(-0.5, 1.5);
    Vec3 w{uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)};
    std::vector<Vec3> rows;
    for (int i = 0; i < g; ++i)
        rows.push_back({uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)});
    return TopState(g, m, w, rows);
}

}  // namespace lagtop::testing

#endif
