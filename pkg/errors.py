from fastapi import HTTPException, status


class MorseFlowError(Exception):
    """Base error; carries the CLI exit code and the HTTP status it maps to."""
    exit_code = 1
    http_status = status.HTTP_500_INTERNAL_SERVER_ERROR

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "message": self.message, **self.context}


class InputError(MorseFlowError, ValueError):
    exit_code = 2
    http_status = status.HTTP_400_BAD_REQUEST


class PreconditionError(InputError):
    http_status = status.HTTP_409_CONFLICT


class SizeLimitError(MorseFlowError):
    exit_code = 3
    http_status = status.HTTP_413_REQUEST_ENTITY_TOO_LARGE


class VerificationError(MorseFlowError):
    exit_code = 1
    http_status = status.HTTP_500_INTERNAL_SERVER_ERROR


def http_error(e: MorseFlowError) -> HTTPException:
    return HTTPException(status_code=e.http_status, detail=e.to_dict())
