#pragma once

#define GOLOMB_VERSION "1.0.0"
