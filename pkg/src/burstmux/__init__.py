"""Delay-constrained multiplexed streaming erasure codes for burst channels."""

from .block import (
    BlockCode,
    CodeParams,
    DecodeResult,
    DecodeSchedule,
    build_multiplexed,
    build_single_stream,
    decode_block,
    encode_block,
    explicit_code,
)
from .capacity import CapacityRegion, RatePair, c_single, contains, corner, region
from .channel import (
    ERASED,
    Burst,
    ErasurePattern,
    apply,
    enumerate_bursts,
    gilbert_elliott,
    parse_pattern,
    periodic,
)
from .compose import CompositeCode, concatenate, time_share
from .descriptor import code_hash, dumps, from_dict, load_path, loads, save_path, to_dict
from .design import design
from .errors import (
    BurstmuxError,
    DecodeError,
    DescriptorError,
    FieldError,
    FieldSizeError,
    InternalConsistencyError,
    RegimeError,
    TargetError,
)
from .field import GF, GF2, GF256, ParityMatrix, check_mds, field_new, mds_parity
from .simulate import SimulationReport, simulate
from .stream import (
    UNRECOVERED,
    EmittedEstimates,
    StreamDecoder,
    StreamEncoder,
    StreamingCode,
    lane_terms,
    to_streaming,
)
from .verify import VerificationReport, verify_block, verify_code

__version__ = "0.1.0"

__all__ = [
    "BlockCode",
    "Burst",
    "BurstmuxError",
    "CapacityRegion",
    "CodeParams",
    "CompositeCode",
    "DecodeError",
    "DecodeResult",
    "DecodeSchedule",
    "DescriptorError",
    "ERASED",
    "EmittedEstimates",
    "ErasurePattern",
    "FieldError",
    "FieldSizeError",
    "GF",
    "GF2",
    "GF256",
    "InternalConsistencyError",
    "ParityMatrix",
    "RatePair",
    "RegimeError",
    "SimulationReport",
    "StreamDecoder",
    "StreamEncoder",
    "StreamingCode",
    "TargetError",
    "UNRECOVERED",
    "VerificationReport",
    "apply",
    "build_multiplexed",
    "build_single_stream",
    "c_single",
    "check_mds",
    "code_hash",
    "concatenate",
    "contains",
    "corner",
    "decode_block",
    "design",
    "dumps",
    "encode_block",
    "enumerate_bursts",
    "explicit_code",
    "field_new",
    "from_dict",
    "gilbert_elliott",
    "lane_terms",
    "load_path",
    "loads",
    "mds_parity",
    "parse_pattern",
    "periodic",
    "region",
    "save_path",
    "simulate",
    "time_share",
    "to_dict",
    "to_streaming",
    "verify_block",
    "verify_code",
]
