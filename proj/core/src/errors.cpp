#include "mqcardinal/errors.hpp"

namespace mqc {

void throw_domain(const std::string& what) { throw DomainError(what); }
void throw_validation(const std::string& what) { throw ValidationError(what); }
void throw_budget(const std::string& what) { throw BudgetError(what); }

}  // namespace mqc
