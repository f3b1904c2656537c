#pragma once

namespace acg {

int run_cli(int argc, const char* const* argv);

}  // namespace acg
