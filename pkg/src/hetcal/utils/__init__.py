# Copyright © 2026 The hetcal Authors. All Rights Reserved.

from .parameters import Interval, ModelParameters
from .serialization import CustomEncoder, dumps_document, write_atomic
