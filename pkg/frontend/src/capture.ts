// Webcam frame capture. The game loop pulls PNG blobs from a FrameSource;
// the webcam implementation grabs them from a <video> element via a canvas,
// and tests substitute prerecorded bytes.

export interface FrameSource {
  /** Next frame as a PNG, or null when no frame is available. */
  next(): Promise<Blob | null>;
  stop(): void;
}

export class WebcamSource implements FrameSource {
  private video: HTMLVideoElement;
  private canvas: HTMLCanvasElement;
  private stream: MediaStream;

  private constructor(stream: MediaStream, video: HTMLVideoElement) {
    this.stream = stream;
    this.video = video;
    this.canvas = document.createElement("canvas");
  }

  /** Throws when the camera is unavailable or permission is denied. */
  static async open(video: HTMLVideoElement): Promise<WebcamSource> {
    const stream = await navigator.mediaDevices.getUserMedia({
      video: { width: { ideal: 1280 }, height: { ideal: 720 } },
      audio: false,
    });
    video.srcObject = stream;
    await video.play();
    return new WebcamSource(stream, video);
  }

  async next(): Promise<Blob | null> {
    const { videoWidth, videoHeight } = this.video;
    if (!videoWidth || !videoHeight) {
      return null;
    }
    this.canvas.width = videoWidth;
    this.canvas.height = videoHeight;
    const ctx = this.canvas.getContext("2d");
    if (!ctx) {
      return null;
    }
    ctx.drawImage(this.video, 0, 0);
    return await new Promise<Blob | null>((resolve) =>
      this.canvas.toBlob((blob) => resolve(blob), "image/png"),
    );
  }

  stop(): void {
    for (const track of this.stream.getTracks()) {
      track.stop();
    }
  }
}

/** Replays a fixed list of PNG frames; used by tests and demos. */
export class RecordedSource implements FrameSource {
  private index = 0;

  constructor(private readonly frames: (Uint8Array | Blob)[]) {}

  async next(): Promise<Blob | null> {
    const frame = this.frames[this.index % this.frames.length];
    this.index += 1;
    if (frame === undefined) {
      return null;
    }
    return frame instanceof Blob ? frame : new Blob([frame as BlobPart]);
  }

  stop(): void {}
}
