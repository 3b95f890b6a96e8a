#include "doctest.h"
#include "qpd/examples.hpp"

TEST_CASE("placeholder test_json_cli") { CHECK(true); }
