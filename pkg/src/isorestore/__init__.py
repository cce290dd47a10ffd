"""Self-supervised isotropic restoration of anisotropic 3D microscopy volumes.

The package covers the full workflow: volume I/O and resampling, PSF
construction and factoring, synthetic phantom acquisition, a small
deterministic CNN engine, self-supervised training-pair generation and
whole-volume restoration, plus Richardson-Lucy and segmentation-based
evaluation.

Heavy submodules are imported lazily so the CLI can configure BLAS thread
counts before numpy is loaded.
"""

__version__ = "0.1.0"

_API = {
    "Rng": "isorestore.rng",
    "derive_seed": "isorestore.rng",
    "Volume": "isorestore.volume",
    "LabelVolume": "isorestore.volume",
    "extract_slice": "isorestore.volume",
    "stack_slices": "isorestore.volume",
    "permute_axes": "isorestore.volume",
    "normalize_percentile": "isorestore.volume",
    "read_volume": "isorestore.fileio",
    "write_volume": "isorestore.fileio",
    "read_label_volume": "isorestore.fileio",
    "write_label_volume": "isorestore.fileio",
    "resample_axis": "isorestore.resample",
    "resample_image_axis": "isorestore.resample",
    "Psf": "isorestore.psf",
    "Kernel2D": "isorestore.psf",
    "gaussian_psf": "isorestore.psf",
    "microscope_psf": "isorestore.psf",
    "rotate_to_lateral": "isorestore.psf",
    "isotropic_average": "isorestore.psf",
    "split_psf": "isorestore.psf",
    "project_to_2d": "isorestore.psf",
    "PhantomSpec": "isorestore.phantom",
    "AcquisitionSpec": "isorestore.phantom",
    "generate_nuclei": "isorestore.phantom",
    "generate_membranes": "isorestore.phantom",
    "generate_combined": "isorestore.phantom",
    "acquire": "isorestore.phantom",
    "isotropic_reference": "isorestore.phantom",
    "TrainConfig": "isorestore.nn",
    "build_model": "isorestore.isonet",
    "PsfStrategy": "isorestore.isonet",
    "make_training_pairs": "isorestore.isonet",
    "augment": "isorestore.isonet",
    "train": "isorestore.isonet",
    "restore_volume": "isorestore.isonet",
    "richardson_lucy": "isorestore.deconv",
    "intermodes_threshold": "isorestore.segment",
    "otsu_threshold": "isorestore.segment",
    "fill_holes": "isorestore.segment",
    "watershed_edt": "isorestore.segment",
    "seg_score": "isorestore.metrics",
    "psnr_table": "isorestore.metrics",
}


def __getattr__(name):
    if name in _API:
        import importlib

        module = importlib.import_module(_API[name])
        return getattr(module, name)
    raise AttributeError(f"module 'isorestore' has no attribute {name!r}")


def __dir__():
    return sorted(set(globals()) | set(_API))
