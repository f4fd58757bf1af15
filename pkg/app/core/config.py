from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings
from dotenv import load_dotenv

load_dotenv()


class Settings(BaseSettings):
    LOG_LEVEL: str = Field(default="INFO")

    # Default feature / bank cache directory, overridable per experiment
    CACHE_DIR: str = Field(min_length=1, default=".cache/orbit-audio")

    DEFAULT_SEED: int = Field(default=0, ge=0)
    JOBS: int = Field(default=1, ge=1)

    # GTZAN native rate
    SAMPLE_RATE: int = Field(default=22050, gt=0)


try:
    CONFIG = Settings()
except ValidationError as e:
    print("Settings validation failed:")
    for error in e.errors():
        print(f"Variable - {error['loc']}: {error['msg']}, please check your .env file")
    raise e
except Exception as e:
    print(f"Unexpected error in Settings(): {str(e)}")
    raise e
