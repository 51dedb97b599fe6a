#include "pathgen/subject.hpp"

#include <fstream>
#include <sstream>

#include "pathgen/errors.hpp"

namespace pathgen {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'", {1, 1});
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

std::string schema_path_for(const std::string& tp_path) {
    std::string stem = tp_path;
    if (stem.size() > 3 && stem.compare(stem.size() - 3, 3, ".tp") == 0)
        stem.erase(stem.size() - 3);
    return stem + ".schema.json";
}

Subject load_subject(const std::string& tp_path) {
    Subject subject;
    subject.source = read_file(tp_path);
    subject.program = parse(subject.source);
    subject.name = subject.program.name;
    subject.table = assign_labels(subject.program);
    subject.schema = schema_from_json(read_file(schema_path_for(tp_path)));
    validate_schema(subject.program, subject.schema);
    return subject;
}

}  // namespace pathgen
