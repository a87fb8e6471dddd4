#ifndef AGES_CLI_HPP
#define AGES_CLI_HPP

#include <iostream>
#include <string>
#include <vector>

namespace ages {

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    (void)args;
    (void)out;
    err << "cli not wired yet\n";
    return 2;
}

}  // namespace ages

#endif  // AGES_CLI_HPP
