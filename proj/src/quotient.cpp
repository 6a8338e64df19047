#include "pearl/quotient.hpp"
