#pragma once

#include "factorlat/factorizer.hpp"
#include "json.hpp"

namespace factorlat {

using Json = nlohmann::ordered_json;

Json to_json(const AbelianGroup& g);
Json to_json(const GroupElement& e);
Json to_json(const QuadForm& f);
QuadForm form_from_json(const Json& j);

Json knumber_to_json(const KNumber& x);
KNumber knumber_from_json(const Json& j);
Json graded_to_json(const GradedNumber& x);

// {"group":[...], "entries":[{"id":...,"class":[...],"mult":...}, ...]}
Json sequence_to_json(const ClassSequence& s);
ClassSequence sequence_from_json(const Json& j);

Json classgroup_to_json(const FormClassGroup& cg);
FormClassGroup classgroup_from_json(const Json& j);

// {"n":...,"disc":...,"eta":...,"lengths":[...],"partitions":[...],
//  "explicit":[...],"mode":"explicit|symbolic"}
Json report_to_json(const FactorizationReport& r);

}  // namespace factorlat
