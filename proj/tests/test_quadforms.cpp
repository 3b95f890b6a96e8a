#include "doctest.h"
#include "qpd/examples.hpp"

TEST_CASE("placeholder test_quadforms") { CHECK(true); }
