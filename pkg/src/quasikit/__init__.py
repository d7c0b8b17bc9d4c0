"""Quasigroup and Latin-square cryptography toolkit."""

from .core import (
    Isotopy,
    NAryQuasigroup,
    OrthomorphismReport,
    Permutation,
    Quasigroup,
    ShapelessReport,
    apply_isotopy,
    as_sigma,
    compose_isotopy,
    cyclic_quasigroup,
    cyclic_table,
    direct_product,
    generate_quasigroup,
    hamming_distance,
    invert_isotopy,
    is_orthomorphism,
    nary_from_callable,
    nary_parastrophe,
    orthomorphism_report,
    parastrophe,
    shapeless_report,
    translation_orders,
    validate_quasigroup,
)
from .cipher import (
    OrthogonalSystem,
    StreamKey,
    TernaryKey,
    build_linear_orthosystem,
    decrypt_stream,
    decrypt_ternary,
    encrypt_stream,
    encrypt_ternary,
    orthosys_decrypt,
    orthosys_encrypt,
    mix_transform,
    verify_orthogonality,
)
from .hashing import HashSpec, hash_fold, hash_multi
from .latinsets import (
    PartialLatinSquare,
    ShareDeal,
    completion_count,
    deal_shares,
    greedy_critical_search,
    is_critical,
    is_uniquely_completable,
    reconstruct,
    smallest_critical_exhaustive,
)
from .mqq import (
    BooleanFunction,
    MqqClassification,
    MqqGeneration,
    anf,
    classify_mqq,
    degree,
    quasigroup_to_vvbf,
    generate_mqq,
)
from .nlpn import (
    Lfsr,
    SymbolSequence,
    berlekamp_massey,
    cyclic_shift,
    linear_complexity,
    nlpn_pair,
    pn_sequence,
    validated_polynomial,
)
from .protocols import (
    CiTransport,
    PublicKeyTransport,
    KeyAgreement,
    RowLatinSquare,
    RstQuasigroup,
    RstTransport,
    ZkpRound,
    ZkpTranscript,
    ci_key_transport,
    public_key_transport,
    make_linear_ci,
    rls_key_agreement,
    rls_multiply,
    rls_period,
    rls_power,
    rst_key_transport,
    verify_rst,
    zkp_simulate,
)

__version__ = "0.1.0"
