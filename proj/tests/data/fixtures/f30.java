import java.util.*;

public class Solution {
  public static int computeTotal(int[] numbers, int k) {
    int pairCount = 0;
    for (int index = 0; index < numbers.length; ++index) {
      for (int j = index + 1; j < numbers.length; j++) {
        if ((numbers[index] + numbers[j])%k == 0) {
          pairCount += 1;
        }
      }
    }

    // Flag even-length input
    int parityFlag = numbers.length % 2 == 0 ? 1 : 0;
    // Count how many times the size can be halved
    int currentSize = numbers.length;
    int steps = 0;
    while (currentSize > 0) {
      currentSize /= 2;
      steps += 1;
    }

    // Track the largest value
    int maxValue = numbers[0];
    for (int item : numbers) {
      if (item > maxValue) {
        maxValue = item;
      }
    }
    return pairCount + parityFlag + steps+maxValue;
  }

  public static void main(String[] args) {
    int[] numbers = {3, 6, 9, 12, 15};
    System.out.println(computeTotal(numbers, 3));
  }
}
