from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from .config import load_config, resolve
from .generate_report import build_table
from .pipeline import VerificationPipeline

app = FastAPI(
    title="ncmckay API",
    description="API for verifying the deformed McKay correspondence of A_n singularities",
    version="0.1.0"
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.get("/health")
async def health_check():
    return {"status": "ok", "service": "ncmckay"}


@app.get("/")
async def root():
    return {"message": "Welcome to the ncmckay API"}


@app.get("/verify/{suite}")
def verify(suite: str, n: Optional[int] = None, deg_xy: Optional[int] = None, deg_t: Optional[int] = None):
    config = load_config()
    defaults = config.get('defaults', {})
    pipeline = VerificationPipeline(config)
    try:
        return pipeline.run(
            suite,
            resolve(n, defaults.get('n', 2)),
            resolve(deg_xy, defaults.get('deg_xy', 6)),
            resolve(deg_t, defaults.get('deg_t', 3)),
        )
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))


@app.get("/dims/{kind}")
def dims(
    kind: str,
    n: Optional[int] = None,
    src: int = 0,
    tgt: int = 0,
    i: int = 0,
    j: int = 0,
    deg: Optional[int] = None,
    deg_xy: Optional[int] = None,
    deg_t: Optional[int] = None,
):
    config = load_config()
    max_n = config.get('limits', {}).get('max_n', 4)
    defaults = config.get('defaults', {})
    n = resolve(n, defaults.get('n', 2))
    if not 0 <= n <= max_n:
        raise HTTPException(status_code=400, detail=f"n must lie in [0, {max_n}], got {n}")
    try:
        return build_table(
            kind,
            n=n,
            src=src,
            tgt=tgt,
            i=i,
            j=j,
            deg=resolve(deg, 3),
            deg_xy=resolve(deg_xy, resolve(deg, defaults.get('deg_xy', 6))),
            deg_t=resolve(deg_t, resolve(deg, defaults.get('deg_t', 3))),
            max_unknowns=config.get('limits', {}).get('max_unknowns'),
        )
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
