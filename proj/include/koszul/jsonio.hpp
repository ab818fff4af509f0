#pragma once

#include <json.hpp>

#include "koszul/ainf.hpp"
#include "koszul/iwasawa.hpp"

namespace koszul {

inline constexpr const char* kSchemaTag = "koszul-ainfty/1";

nlohmann::ordered_json complex_to_json(const CochainComplex& C);
CochainComplex complex_from_json(const nlohmann::json& j);

nlohmann::ordered_json ainfinity_to_json(const AInfinity& A);
AInfinity ainfinity_from_json(const nlohmann::json& j);

nlohmann::ordered_json morphism_to_json(const AInfinityMorphism& f, const AInfinity& target);
/* the returned structures own each other: (source, target, morphism) */
struct MorphismBundle {
    std::shared_ptr<AInfinity> source, target;
    AInfinityMorphism f;
};
MorphismBundle morphism_from_json(const nlohmann::json& j);

nlohmann::ordered_json module_to_json(const AInfinityModule& M);
struct ModuleBundle {
    std::shared_ptr<AInfinity> algebra;
    std::shared_ptr<AInfinityModule> M;
};
ModuleBundle module_from_json(const nlohmann::json& j);

PValuedGroupSpec group_spec_from_json(const nlohmann::json& j);

/* atomic write (temp file + rename); creates parent directories */
void write_text_atomic(const std::string& path, const std::string& text);

} // namespace koszul
