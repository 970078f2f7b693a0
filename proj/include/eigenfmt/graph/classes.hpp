#pragma once

// Mapping from dataset category directories to the four graph classes used
// for grouping results, with an optional override file of
// "<category> <class>" lines.

#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace eigenfmt {

inline const std::map<std::string, std::string>& default_class_map() {
  static const std::map<std::string, std::string> map = {
      // biological
      {"bio", "biological"},
      {"eco", "biological"},
      {"protein", "biological"},
      {"bn", "biological"},
      // infrastructure
      {"inf", "infrastructure"},
      {"massive", "infrastructure"},
      {"power", "infrastructure"},
      {"road", "infrastructure"},
      {"tech", "infrastructure"},
      {"web", "infrastructure"},
      // social
      {"ca", "social"},
      {"cit", "social"},
      {"dynamic", "social"},
      {"econ", "social"},
      {"email", "social"},
      {"ia", "social"},
      {"proximity", "social"},
      {"rec", "social"},
      {"retweet_graphs", "social"},
      {"rt", "social"},
      {"soc", "social"},
      {"socfb", "social"},
      {"tscc", "social"},
      // miscellaneous
      {"dimacs", "miscellaneous"},
      {"dimacs10", "miscellaneous"},
      {"graph500", "miscellaneous"},
      {"heter", "miscellaneous"},
      {"labeled", "miscellaneous"},
      {"misc", "miscellaneous"},
      {"rand", "miscellaneous"},
      {"sc", "miscellaneous"},
  };
  return map;
}

class ClassMap {
public:
  ClassMap() : map_(default_class_map()) {}

  // Override file: one "<category> <class>" pair per line; '#' comments.
  void load_overrides(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ls(line);
      std::string category, cls, extra;
      if (!(ls >> category >> cls) || (ls >> extra))
        throw std::runtime_error("class map line " + std::to_string(lineno) +
                                 ": expected '<category> <class>'");
      map_[category] = cls;
    }
  }

  std::string class_of(const std::string& category) const {
    auto it = map_.find(category);
    if (it == map_.end())
      throw std::runtime_error("unknown graph category '" + category + "'");
    return it->second;
  }

  bool knows(const std::string& category) const { return map_.count(category) != 0; }

private:
  std::map<std::string, std::string> map_;
};

}  // namespace eigenfmt
