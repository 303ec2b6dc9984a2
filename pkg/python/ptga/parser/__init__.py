# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #

from .grammar import (ModelSource, Token, TokenStream, TokenType, lex,
                      parse_model, parse_constraint, parse_model_file)
from .writer import serialize_model, write_model
